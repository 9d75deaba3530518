use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use quadkit::cli::InputDocument;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn quadkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadkit")).args(args).output().unwrap()
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn sample_documents_round_trip() {
    for entry in fs::read_dir(data("")).unwrap() {
        let p = entry.unwrap().path();
        let doc = InputDocument::parse(&fs::read_to_string(&p).unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert_eq!(InputDocument::parse(&doc.to_text()).unwrap(), doc, "{}", p.display());
    }
}

#[test]
fn negative_verdicts_still_exit_zero() {
    let out = quadkit(&["koszul", &path("non_koszul.doc")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("false"), "{text}");
}

#[test]
fn structured_output_has_stable_envelope() {
    let out = quadkit(&["homology", &path("sym2.doc"), "--format", "structured"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["command", "engine_version", "result", "warnings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "homology");
    assert!(String::from_utf8(out.stderr).unwrap().contains("timing:"));
}

#[test]
fn malformed_document_fails_with_location() {
    let dir = std::env::temp_dir().join(format!("quadkit-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.doc");
    fs::write(&bad, "[field]\nl = 4\n\n[generators]\nx\n").unwrap();
    let out = quadkit(&["homology", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    fs::write(&bad, "[field]\nl = 3\n\n[generators]\nx y\n\n[relations]\nsymbolic: x*y*q\n").unwrap();
    let out = quadkit(&["homology", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("bad.doc: 8:"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quadkit(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(quadkit(&["koszul", &path("sym2.doc"), "--criterion", "vibes"]).status.code(), Some(2));
}

#[test]
fn missing_file_is_an_error() {
    assert_eq!(quadkit(&["homology", "/nonexistent/quadkit.doc"]).status.code(), Some(1));
}

#[test]
fn group_documents_reject_algebra_commands() {
    let out = quadkit(&["koszul", &path("klein.doc")]);
    assert_eq!(out.status.code(), Some(1));
}
