#![allow(dead_code)]

use quadkit::exactla::{PrimeField, Subspace};
use quadkit::quadratic::QuadraticPresentation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

pub fn field(l: u64) -> PrimeField {
    PrimeField::new(l).unwrap()
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

pub fn random_vector(rng: &mut ChaCha8Rng, f: PrimeField, len: usize) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..f.l())).collect()
}

/// A presentation with `dim R` random vectors spanning the relations.
pub fn random_presentation(rng: &mut ChaCha8Rng, f: PrimeField, d: usize, r: usize) -> QuadraticPresentation {
    let vectors: Vec<Vec<u32>> = (0..r).map(|_| random_vector(rng, f, d * d)).collect();
    QuadraticPresentation::with_default_names(f, d, Subspace::span(f, d * d, &vectors)).unwrap()
}

/// Sparse relations: each vector has one or two nonzero entries, which
/// makes non-Koszul and non-distributive cases common.
pub fn sparse_presentation(rng: &mut ChaCha8Rng, f: PrimeField, d: usize, r: usize) -> QuadraticPresentation {
    let vectors: Vec<Vec<u32>> = (0..r)
        .map(|_| {
            let mut v = vec![0u32; d * d];
            for _ in 0..rng.gen_range(1..=2) {
                v[rng.gen_range(0..d * d)] = rng.gen_range(1..f.l());
            }
            v
        })
        .collect();
    QuadraticPresentation::with_default_names(f, d, Subspace::span(f, d * d, &vectors)).unwrap()
}

pub fn named(f: PrimeField, gens: &[&str], rels: &[&str]) -> QuadraticPresentation {
    QuadraticPresentation::from_symbolic(f, gens, rels).unwrap()
}

pub fn named_examples() -> Vec<(String, QuadraticPresentation)> {
    let mut out = Vec::new();
    for l in [2, 3, 5] {
        let f = field(l);
        out.push((format!("sym2/F{l}"), named(f, &["x", "y"], &["x*y - y*x"])));
        out.push((format!("free2/F{l}"), named(f, &["x", "y"], &[])));
        out.push((
            format!("full2/F{l}"),
            named(f, &["x", "y"], &["x*x", "x*y", "y*x", "y*y"]),
        ));
    }
    let f3 = field(3);
    out.push((
        "exterior3/F3".into(),
        named(
            f3,
            &["x", "y", "z"],
            &["x*x", "y*y", "z*z", "x*y + y*x", "x*z + z*x", "y*z + z*y"],
        ),
    ));
    out.push(("dual-numbers/F2".into(), named(field(2), &["x"], &["x*x"])));
    out.push(("non-koszul/F2".into(), named(field(2), &["x", "y"], &["x*y", "y*x + x*x"])));
    out.push((
        "sym3/F2".into(),
        named(field(2), &["x", "y", "z"], &["x*y + y*x", "x*z + z*x", "y*z + z*y"]),
    ));
    out
}

/// Seeded random presentations over `F_2` and `F_3` with `dim V ≤ 3` and
/// `dim R ≤ 4`, half dense and half sparse.
pub fn random_corpus(count: usize) -> Vec<(String, QuadraticPresentation)> {
    let mut rng = rng(1);
    (0..count)
        .map(|k| {
            let f = field(if k % 2 == 0 { 2 } else { 3 });
            let d = rng.gen_range(1..=3usize);
            let r = rng.gen_range(0..=4usize.min(d * d));
            let p = if k % 4 < 2 {
                random_presentation(&mut rng, f, d, r)
            } else {
                sparse_presentation(&mut rng, f, d, r)
            };
            (format!("random-{k}/F{}/d{d}", f.l()), p)
        })
        .collect()
}

pub fn corpus() -> Vec<(String, QuadraticPresentation)> {
    let mut out = named_examples();
    out.extend(random_corpus(40));
    out
}

fn commutator(f: PrimeField, d: usize, i: usize, j: usize, sign: u32) -> Vec<u32> {
    let mut v = vec![0u32; d * d];
    v[i * d + j] = f.add(v[i * d + j], 1);
    v[j * d + i] = f.add(v[j * d + i], sign);
    v
}

/// Commutative algebras: all commutators plus random symmetric relations.
pub fn commutative_corpus(count: usize) -> Vec<(String, QuadraticPresentation)> {
    let mut rng = rng(2);
    (0..count)
        .map(|k| {
            let f = field([2, 3, 5][k % 3]);
            let d = rng.gen_range(1..=3usize);
            let mut rels = Vec::new();
            for i in 0..d {
                for j in i + 1..d {
                    rels.push(commutator(f, d, i, j, f.neg(1)));
                }
            }
            for _ in 0..rng.gen_range(0..=2) {
                let mut v = vec![0u32; d * d];
                let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
                v[i * d + j] = 1;
                if i != j {
                    v[j * d + i] = 1;
                }
                if rng.gen_bool(0.5) {
                    let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
                    let c = rng.gen_range(1..f.l());
                    v[a * d + b] = f.add(v[a * d + b], c);
                    if a != b {
                        v[b * d + a] = f.add(v[b * d + a], c);
                    }
                }
                rels.push(v);
            }
            let p = QuadraticPresentation::with_default_names(f, d, Subspace::span(f, d * d, &rels)).unwrap();
            (format!("commutative-{k}/F{}/d{d}", f.l()), p)
        })
        .collect()
}

/// Skew-commutative algebras over odd fields: anticommutators, zero
/// squares and random extra antisymmetric-compatible relations.
pub fn skew_corpus(count: usize) -> Vec<(String, QuadraticPresentation)> {
    let mut rng = rng(3);
    (0..count)
        .map(|k| {
            let f = field([3, 5][k % 2]);
            let d = rng.gen_range(1..=3usize);
            let mut rels = Vec::new();
            for i in 0..d {
                let mut sq = vec![0u32; d * d];
                sq[i * d + i] = 1;
                rels.push(sq);
                for j in i + 1..d {
                    rels.push(commutator(f, d, i, j, 1));
                }
            }
            if d >= 2 && rng.gen_bool(0.5) {
                let (i, j) = (0, rng.gen_range(1..d));
                let mut v = vec![0u32; d * d];
                v[i * d + j] = 1;
                v[j * d + i] = f.neg(1);
                rels.push(v);
            }
            let p = QuadraticPresentation::with_default_names(f, d, Subspace::span(f, d * d, &rels)).unwrap();
            (format!("skew-{k}/F{}/d{d}", f.l()), p)
        })
        .collect()
}
