//! Command-line front end: the input document grammar, command dispatch and
//! report rendering.
//!
//! Documents are line oriented. Section headers sit in square brackets,
//! `#` starts a comment, and each remaining line is one item:
//!
//! ```text
//! [field]
//! l = 3
//!
//! [generators]
//! x
//! y
//!
//! [relations]
//! symbolic: x*y - y*x
//! coeff-row: 0 1 2 0
//! ```
//!
//! An `[ideal]` section (homogeneous generators of any degree, same item
//! syntax) in place of `[relations]` describes a graded algebra
//! `T(V)/(I)`. A `[group]` section holds either `builtin = cyclic 4` (also
//! `elementary-abelian p k`, `dihedral n`, `quaternion order`) or
//! `elements = e a b c` followed by one multiplication-table row per
//! element. A `[milnor]` section holds `l` and `pool_size`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactla::{PrimeField, Subspace};
use crate::homology::{
    cohomology_table, homology_table, quadratic_verdict_algebra, quadratic_verdict_coalgebra, BigradedTable,
    CohomologyRing, QuadraticReport,
};
use crate::koszul::{
    is_distributive_direct, koszul_by_distributivity, koszul_by_homology, DirectDistributivity, KoszulVerdict,
    Side, SubspaceCollection, Witness, DEFAULT_LATTICE_BOUND,
};
use crate::milnor::{finite_field_example, verify_pbw_milnor, RationalSymbolAlgebraSpec};
use crate::nilpotent::{
    associated_graded_from, checked_filtration, filtration_respects_comultiplication, group_coalgebra,
    comparison_harness, FiniteGroupTable, ComparisonReport, LITERAL_FILTRATION_BUDGET,
};
use crate::pbw::{pbw_check, OrderedGenerators, Parity};
use crate::quadratic::symbolic::{format_expression, parse_expression, TensorElement};
use crate::quadratic::{
    build_algebra_slice, build_coalgebra_slice, dual, quadratic_part_of_algebra, quadratic_part_of_coalgebra,
    GradedSliceAlgebra, QuadraticPart, QuadraticPresentation, Reading, TaggedPresentation, TensorQuotient,
};
use crate::tensor;

/// Cap on `(dim C - 1)^{n+1}` for ungraded cobar computations unless
/// `--allow-large` is given.
pub const LARGE_COBAR_LIMIT: usize = 50_000;

/// A built-in finite group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinGroup {
    Cyclic(usize),
    ElementaryAbelian(usize, usize),
    Dihedral(usize),
    Quaternion(usize),
}

impl BuiltinGroup {
    pub fn build(self) -> Result<FiniteGroupTable> {
        match self {
            Self::Cyclic(n) => FiniteGroupTable::cyclic(n),
            Self::ElementaryAbelian(p, k) => FiniteGroupTable::elementary_abelian(p, k),
            Self::Dihedral(n) => FiniteGroupTable::dihedral(n),
            Self::Quaternion(order) => FiniteGroupTable::quaternion(order),
        }
    }

    fn render(self) -> String {
        match self {
            Self::Cyclic(n) => format!("cyclic {n}"),
            Self::ElementaryAbelian(p, k) => format!("elementary-abelian {p} {k}"),
            Self::Dihedral(n) => format!("dihedral {n}"),
            Self::Quaternion(order) => format!("quaternion {order}"),
        }
    }
}

impl FromStr for BuiltinGroup {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> std::result::Result<usize, String> {
            parts
                .get(i)
                .ok_or_else(|| format!("`{s}` is missing an argument"))?
                .parse()
                .map_err(|_| format!("`{}` is not a number", parts[i]))
        };
        let (group, arity) = match parts.first().copied() {
            Some("cyclic") => (Self::Cyclic(num(1)?), 2),
            Some("elementary-abelian") => (Self::ElementaryAbelian(num(1)?, num(2)?), 3),
            Some("dihedral") => (Self::Dihedral(num(1)?), 2),
            Some("quaternion") => (Self::Quaternion(num(1)?), 2),
            _ => return Err(format!("unknown builtin group `{s}`")),
        };
        if parts.len() != arity {
            return Err(format!("`{s}` has extra arguments"));
        }
        Ok(group)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Builtin(BuiltinGroup),
    Table(FiniteGroupTable),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDocument {
    pub field: PrimeField,
    pub source: GroupSource,
    pub group: FiniteGroupTable,
}

/// Generators and homogeneous ideal generators of arbitrary degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceDocument {
    pub field: PrimeField,
    pub generators: Vec<String>,
    pub ideal: Vec<TensorElement>,
}

impl SliceDocument {
    pub fn build(&self, n_max: usize) -> Result<GradedSliceAlgebra> {
        let mut by_degree: BTreeMap<usize, Vec<Vec<u32>>> = BTreeMap::new();
        for e in &self.ideal {
            by_degree.entry(e.degree).or_default().push(e.coords.clone());
        }
        let q = TensorQuotient::new(self.field, self.generators.len(), n_max, &by_degree)?;
        GradedSliceAlgebra::from_tensor_quotient(q, Some(self.generators.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorDocument {
    pub l: u64,
    pub pool_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputDocument {
    Presentation(QuadraticPresentation),
    GradedSlice(SliceDocument),
    Group(GroupDocument),
    Milnor(MilnorDocument),
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// One content line: its number, the column of its first character and
/// the trimmed text.
#[derive(Debug, Clone)]
struct Item {
    line: usize,
    column: usize,
    text: String,
}

impl Item {
    /// `key = value` with the value's column.
    fn key_value(&self) -> Option<(&str, &str, usize)> {
        let eq = self.text.find('=')?;
        let key = self.text[..eq].trim();
        let rest = &self.text[eq + 1..];
        let value = rest.trim_start();
        let col = self.column + self.text[..eq + 1].chars().count() + (rest.chars().count() - value.chars().count());
        Some((key, value.trim_end(), col))
    }

    /// `tag: body` with the body's column.
    fn tagged(&self) -> Option<(&str, &str, usize)> {
        let colon = self.text.find(':')?;
        let tag = self.text[..colon].trim();
        let rest = &self.text[colon + 1..];
        let body = rest.trim_start();
        let col =
            self.column + self.text[..colon + 1].chars().count() + (rest.chars().count() - body.chars().count());
        Some((tag, body.trim_end(), col))
    }

    /// Whitespace-separated tokens with their columns.
    fn tokens_from(text: &str, col0: usize) -> Vec<(&str, usize)> {
        let mut out = Vec::new();
        let mut start = None;
        for (idx, (byte, ch)) in text.char_indices().enumerate() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some((byte, idx)),
                (true, Some((b, i))) => {
                    out.push((&text[b..byte], col0 + i));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some((b, i)) = start {
            out.push((&text[b..], col0 + i));
        }
        out
    }
}

const SECTIONS: [&str; 6] = ["field", "generators", "relations", "ideal", "group", "milnor"];

fn split_sections(text: &str) -> Result<BTreeMap<&'static str, (usize, Vec<Item>)>> {
    let mut sections: BTreeMap<&'static str, (usize, Vec<Item>)> = BTreeMap::new();
    let mut current: Option<&'static str> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
        if let Some(name) = trimmed.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| parse_err(line, column, "unterminated section header"))?
                .trim();
            let known = SECTIONS
                .iter()
                .find(|&&s| s == name)
                .ok_or_else(|| parse_err(line, column + 1, format!("unknown section `[{name}]`")))?;
            if sections.contains_key(known) {
                return Err(parse_err(line, column, format!("duplicate section `[{name}]`")));
            }
            sections.insert(known, (line, Vec::new()));
            current = Some(known);
            continue;
        }
        let section = current.ok_or_else(|| parse_err(line, column, "content before the first section"))?;
        sections.get_mut(section).expect("open section").1.push(Item {
            line,
            column,
            text: trimmed.to_string(),
        });
    }
    Ok(sections)
}

/// Parses `key = value` items, rejecting duplicates and unknown keys.
fn key_values<'a>(items: &'a [Item], allowed: &[&str]) -> Result<BTreeMap<String, (&'a str, usize, usize)>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (key, value, col) = item
            .key_value()
            .ok_or_else(|| parse_err(item.line, item.column, "expected `key = value`"))?;
        if !allowed.contains(&key) {
            return Err(parse_err(item.line, item.column, format!("unknown key `{key}`")));
        }
        if out.insert(key.to_string(), (value, item.line, col)).is_some() {
            return Err(parse_err(item.line, item.column, format!("duplicate key `{key}`")));
        }
    }
    Ok(out)
}

fn parse_number<T: FromStr>(value: &str, line: usize, col: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| parse_err(line, col, format!("`{value}` is not a valid number")))
}

fn require<'a>(
    kv: &BTreeMap<String, (&'a str, usize, usize)>,
    key: &str,
    section_line: usize,
    section: &str,
) -> Result<(&'a str, usize, usize)> {
    kv.get(key)
        .copied()
        .ok_or_else(|| parse_err(section_line, 1, format!("`[{section}]` needs `{key}`")))
}

fn parse_field(sections: &BTreeMap<&'static str, (usize, Vec<Item>)>) -> Result<PrimeField> {
    let (header, items) = sections
        .get("field")
        .ok_or_else(|| parse_err(1, 1, "missing `[field]` section"))?;
    let kv = key_values(items, &["l"])?;
    let (value, line, col) = require(&kv, "l", *header, "field")?;
    let l: u64 = parse_number(value, line, col)?;
    PrimeField::new(l)
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_generators(items: &[Item]) -> Result<Vec<String>> {
    let mut names: Vec<String> = Vec::new();
    for item in items {
        for (tok, col) in Item::tokens_from(&item.text, item.column) {
            if !is_identifier(tok) {
                return Err(parse_err(item.line, col, format!("`{tok}` is not a valid generator name")));
            }
            if names.iter().any(|n| n == tok) {
                return Err(parse_err(item.line, col, format!("duplicate generator `{tok}`")));
            }
            names.push(tok.to_string());
        }
    }
    Ok(names)
}

/// `symbolic:` and `coeff-row:` items as tensor elements.
fn parse_elements(items: &[Item], generators: &[String], field: PrimeField) -> Result<Vec<TensorElement>> {
    let d = generators.len();
    items
        .iter()
        .map(|item| {
            let (tag, body, col) = item
                .tagged()
                .ok_or_else(|| parse_err(item.line, item.column, "expected `symbolic:` or `coeff-row:`"))?;
            match tag {
                "symbolic" => parse_expression(body, generators, field, item.line, col),
                "coeff-row" => {
                    let coords = Item::tokens_from(body, col)
                        .into_iter()
                        .map(|(tok, c)| {
                            let v: u64 = parse_number(tok, item.line, c)?;
                            field.check(v).map_err(|_| {
                                parse_err(item.line, c, format!("{v} is not reduced modulo {}", field.l()))
                            })
                        })
                        .collect::<Result<Vec<u32>>>()?;
                    let degree = (1..=16)
                        .find(|&n| tensor::power(d, n) == coords.len())
                        .filter(|_| d > 0)
                        .ok_or_else(|| {
                            parse_err(
                                item.line,
                                col,
                                format!("{} coordinates is not a tensor power of {d}", coords.len()),
                            )
                        })?;
                    Ok(TensorElement { degree, coords })
                }
                other => Err(parse_err(item.line, item.column, format!("unknown item kind `{other}`"))),
            }
        })
        .collect()
}

fn parse_group(header: usize, items: &[Item]) -> Result<(GroupSource, FiniteGroupTable)> {
    let first = items
        .first()
        .ok_or_else(|| parse_err(header, 1, "`[group]` is empty"))?;
    let (key, value, col) = first
        .key_value()
        .ok_or_else(|| parse_err(first.line, first.column, "expected `builtin = …` or `elements = …`"))?;
    match key {
        "builtin" => {
            if let Some(extra) = items.get(1) {
                return Err(parse_err(extra.line, extra.column, "unexpected line after `builtin`"));
            }
            let b: BuiltinGroup = value.parse().map_err(|m: String| parse_err(first.line, col, m))?;
            let g = b.build()?;
            Ok((GroupSource::Builtin(b), g))
        }
        "elements" => {
            let names: Vec<(&str, usize)> = Item::tokens_from(value, col);
            let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, (n, _))| (*n, i)).collect();
            if index.len() != names.len() {
                return Err(parse_err(first.line, col, "duplicate element name"));
            }
            let rows = &items[1..];
            if rows.len() != names.len() {
                return Err(parse_err(
                    header,
                    1,
                    format!("expected {} table rows, found {}", names.len(), rows.len()),
                ));
            }
            let table = rows
                .iter()
                .map(|row| {
                    let toks = Item::tokens_from(&row.text, row.column);
                    if toks.len() != names.len() {
                        return Err(parse_err(
                            row.line,
                            row.column,
                            format!("row has {} entries, expected {}", toks.len(), names.len()),
                        ));
                    }
                    toks.into_iter()
                        .map(|(t, c)| {
                            index
                                .get(t)
                                .copied()
                                .ok_or_else(|| parse_err(row.line, c, format!("unknown element `{t}`")))
                        })
                        .collect()
                })
                .collect::<Result<Vec<Vec<usize>>>>()?;
            let g = FiniteGroupTable::new(names.iter().map(|(n, _)| n.to_string()).collect(), table)?;
            Ok((GroupSource::Table(g.clone()), g))
        }
        other => Err(parse_err(first.line, first.column, format!("unknown key `{other}`"))),
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let sections = split_sections(text)?;
        let present: BTreeSet<&str> = sections.keys().copied().collect();
        let kind_error = |msg: &str| {
            let line = sections.values().map(|(l, _)| *l).max().unwrap_or(1);
            parse_err(line, 1, msg)
        };
        if present.contains("milnor") {
            if present.len() > 1 {
                return Err(kind_error("a `[milnor]` document takes no other sections"));
            }
            let (header, items) = &sections["milnor"];
            let kv = key_values(items, &["l", "pool_size"])?;
            let (lv, ll, lc) = require(&kv, "l", *header, "milnor")?;
            let (pv, pl, pc) = require(&kv, "pool_size", *header, "milnor")?;
            let l: u64 = parse_number(lv, ll, lc)?;
            PrimeField::new(l)?;
            let pool_size: usize = parse_number(pv, pl, pc)?;
            if pool_size == 0 {
                return Err(parse_err(pl, pc, "pool_size must be positive"));
            }
            return Ok(Self::Milnor(MilnorDocument { l, pool_size }));
        }
        let field = parse_field(&sections)?;
        if present.contains("group") {
            if present.len() > 2 {
                return Err(kind_error("a `[group]` document takes only `[field]` besides"));
            }
            let (header, items) = &sections["group"];
            let (source, group) = parse_group(*header, items)?;
            return Ok(Self::Group(GroupDocument { field, source, group }));
        }
        if present.contains("ideal") && present.contains("relations") {
            return Err(kind_error("`[ideal]` and `[relations]` cannot be combined"));
        }
        let generators = match sections.get("generators") {
            Some((_, items)) => parse_generators(items)?,
            None => return Err(parse_err(1, 1, "missing `[generators]` section")),
        };
        if let Some((_, items)) = sections.get("ideal") {
            let parsed = parse_elements(items, &generators, field)?;
            if let Some((_, item)) = parsed.iter().zip(items).find(|(e, _)| e.degree == 0) {
                return Err(parse_err(item.line, item.column, "ideal generators need positive degree"));
            }
            // zero generators contribute nothing
            let ideal = parsed.into_iter().filter(|e| e.coords.iter().any(|&c| c != 0)).collect();
            return Ok(Self::GradedSlice(SliceDocument {
                field,
                generators,
                ideal,
            }));
        }
        let items: &[Item] = sections.get("relations").map_or(&[], |(_, it)| it.as_slice());
        let elements = parse_elements(items, &generators, field)?;
        for (e, item) in elements.iter().zip(items) {
            if e.degree != 2 {
                return Err(parse_err(
                    item.line,
                    item.column,
                    format!("relations must be quadratic, found degree {}", e.degree),
                ));
            }
        }
        let d = generators.len();
        let rows: Vec<Vec<u32>> = elements.into_iter().map(|e| e.coords).collect();
        let relations = Subspace::span(field, d * d, &rows);
        Ok(Self::Presentation(QuadraticPresentation::new(field, generators, relations)?))
    }

    /// Serializes back into the grammar; `parse(to_text(doc)) == doc`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let field_section = |out: &mut String, f: PrimeField| {
            let _ = writeln!(out, "[field]\nl = {}\n", f.l());
        };
        let generator_section = |out: &mut String, gens: &[String]| {
            out.push_str("[generators]\n");
            for g in gens {
                let _ = writeln!(out, "{g}");
            }
            out.push('\n');
        };
        match self {
            Self::Presentation(p) => {
                field_section(&mut out, p.field());
                generator_section(&mut out, p.generators());
                out.push_str("[relations]\n");
                for r in presentation_relations(p) {
                    let _ = writeln!(out, "symbolic: {r}");
                }
            }
            Self::GradedSlice(s) => {
                field_section(&mut out, s.field);
                generator_section(&mut out, &s.generators);
                out.push_str("[ideal]\n");
                for e in &s.ideal {
                    let expr = format_expression(&e.coords, e.degree, &s.generators, s.field);
                    let _ = writeln!(out, "symbolic: {expr}");
                }
            }
            Self::Group(g) => {
                field_section(&mut out, g.field);
                out.push_str("[group]\n");
                match &g.source {
                    GroupSource::Builtin(b) => {
                        let _ = writeln!(out, "builtin = {}", b.render());
                    }
                    GroupSource::Table(t) => {
                        let _ = writeln!(out, "elements = {}", t.names().join(" "));
                        for row in t.table() {
                            let names: Vec<&str> = row.iter().map(|&x| t.names()[x].as_str()).collect();
                            let _ = writeln!(out, "{}", names.join(" "));
                        }
                    }
                }
            }
            Self::Milnor(m) => {
                let _ = writeln!(out, "[milnor]\nl = {}\npool_size = {}", m.l, m.pool_size);
            }
        }
        out
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Presentation(_) => "presentation",
            Self::GradedSlice(_) => "graded-slice",
            Self::Group(_) => "group",
            Self::Milnor(_) => "milnor",
        }
    }
}

fn presentation_relations(p: &QuadraticPresentation) -> Vec<String> {
    p.relations()
        .vectors()
        .iter()
        .map(|v| format_expression(v, 2, p.generators(), p.field()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Criterion {
    Homology,
    Distributivity,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Commutative,
    Skew,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Algebra,
    Coalgebra,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Bigraded bar homology of an algebra document.
    Homology { document: PathBuf },
    /// Cobar cohomology of a presentation's coalgebra or of a group coalgebra.
    Cohomology {
        document: PathBuf,
        #[arg(long)]
        allow_large: bool,
    },
    /// Koszulity verdict through the maximal degree.
    Koszul {
        document: PathBuf,
        #[arg(long, value_enum, default_value_t = Criterion::Homology)]
        criterion: Criterion,
    },
    /// The dual object on the same data.
    Dual {
        document: PathBuf,
        #[arg(long = "as", value_enum, default_value_t = ReadingArg::Algebra)]
        reading: ReadingArg,
    },
    /// Quadratic part and comparison maps.
    QuadraticPart { document: PathBuf },
    /// PBW basis check for a commutative or skew-commutative algebra.
    Pbw {
        document: PathBuf,
        /// Generator order such as `x<y<z`; defaults to the listed order.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, value_enum, default_value_t = ParityArg::Commutative)]
        parity: ParityArg,
    },
    /// Filtration, associated graded and the comparison harness.
    GroupCoalgebra {
        document: PathBuf,
        #[arg(long)]
        allow_large: bool,
    },
    /// The truncated Milnor symbol algebra of the rationals.
    MilnorQ {
        document: Option<PathBuf>,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        pool_size: Option<usize>,
    },
    /// Milnor K-theory of a finite field of order `p^k`.
    FiniteField {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        l: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Homology { .. } => "homology",
            Self::Cohomology { .. } => "cohomology",
            Self::Koszul { .. } => "koszul",
            Self::Dual { .. } => "dual",
            Self::QuadraticPart { .. } => "quadratic-part",
            Self::Pbw { .. } => "pbw",
            Self::GroupCoalgebra { .. } => "group-coalgebra",
            Self::MilnorQ { .. } => "milnor-q",
            Self::FiniteField { .. } => "finite-field",
        }
    }

    pub fn document(&self) -> Option<&PathBuf> {
        match self {
            Self::Homology { document }
            | Self::Cohomology { document, .. }
            | Self::Koszul { document, .. }
            | Self::Dual { document, .. }
            | Self::QuadraticPart { document }
            | Self::Pbw { document, .. }
            | Self::GroupCoalgebra { document, .. } => Some(document),
            Self::MilnorQ { document, .. } => document.as_ref(),
            Self::FiniteField { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "quadkit", version, about = "Exact computations with quadratic algebras over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest (internal or homological) degree considered.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

/// The outcome of a command. `result` is deterministic in the inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub result: Value,
    pub warnings: Vec<String>,
}

impl Report {
    fn payload(&self) -> Value {
        json!({
            "command": self.command,
            "engine_version": env!("CARGO_PKG_VERSION"),
            "result": self.result,
            "warnings": self.warnings,
        })
    }

    /// Pretty JSON with sorted keys.
    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.payload()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_text(&self.payload(), 0, &mut out);
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Structured => self.to_structured(),
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                let _ = writeln!(out, "{pad}{line}");
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn wrong_kind(command: &str, doc: &InputDocument) -> Error {
    Error::Precondition(format!("`{command}` does not accept a {} document", doc.kind()))
}

fn table_json(t: &BigradedTable) -> Value {
    let n = t.n_max;
    let rows: Vec<Vec<usize>> = (0..=n).map(|i| (0..=n).map(|j| t.get(i, j)).collect()).collect();
    let off: Vec<Value> = t
        .off_diagonal_nonzero()
        .into_iter()
        .map(|(i, j, d)| json!({"i": i, "j": j, "dim": d}))
        .collect();
    json!({
        "rows_by_homological_degree": rows,
        "diagonal": t.diagonal(),
        "off_diagonal_nonzero": off,
    })
}

fn quadratic_report_json(r: &QuadraticReport) -> Value {
    let degrees: Vec<Value> = r
        .degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d.degree,
                "comparison_iso": d.comparison_iso,
                "second_row_vanishes": d.second_row_vanishes,
                "second_row_dim": d.second_row_dim,
            })
        })
        .collect();
    json!({
        "one_generated": r.one_generated,
        "is_quadratic": r.is_quadratic(),
        "first_failure": r.first_failure(),
        "degrees": degrees,
    })
}

fn verdict_json(v: &KoszulVerdict) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::Subcollection { degree, positions }) => {
            json!({"kind": "non-distributive-subcollection", "degree": degree, "positions": positions})
        }
        Some(Witness::Bidegree { side, i, j, dim }) => json!({
            "kind": "off-diagonal-homology",
            "side": match side { Side::Algebra => "algebra", Side::Coalgebra => "coalgebra" },
            "i": i,
            "j": j,
            "dim": dim,
        }),
    };
    json!({
        "n_max": v.n_max,
        "is_koszul": v.is_koszul(),
        "koszul_up_to": v.koszul_up_to,
        "first_failure": v.first_failure(),
        "witness": witness,
    })
}

fn quadratic_part_json(q: &QuadraticPart) -> Value {
    let comparisons: Vec<Value> = q
        .comparisons
        .iter()
        .map(|c| {
            json!({
                "degree": c.degree,
                "quadratic_dim": c.quadratic_dim,
                "actual_dim": c.actual_dim,
                "rank": c.rank,
                "injective": c.injective,
                "surjective": c.surjective,
            })
        })
        .collect();
    json!({
        "generators": q.presentation.generators(),
        "relations": presentation_relations(&q.presentation),
        "generated_in_degree_one": q.generated_in_degree_one,
        "iso_through": q.iso_through(),
        "comparisons": comparisons,
    })
}

fn presentation_json(p: &QuadraticPresentation) -> Value {
    json!({
        "field": p.field().l(),
        "generators": p.generators(),
        "relations": presentation_relations(p),
    })
}

fn algebra_of(command: &str, doc: &InputDocument, n_max: usize) -> Result<GradedSliceAlgebra> {
    match doc {
        InputDocument::Presentation(p) => Ok(build_algebra_slice(p, n_max)),
        InputDocument::GradedSlice(s) => s.build(n_max),
        other => Err(wrong_kind(command, other)),
    }
}

fn check_cobar_size(dim: usize, n_max: usize, allow_large: bool) -> Result<()> {
    let cost = dim.saturating_sub(1).checked_pow(n_max as u32 + 1).unwrap_or(usize::MAX);
    if cost > LARGE_COBAR_LIMIT && !allow_large {
        return Err(Error::Precondition(format!(
            "the cobar complex needs about {cost} coordinates in degree {}; pass --allow-large to run it",
            n_max + 1
        )));
    }
    Ok(())
}

fn harness_json(r: &ComparisonReport) -> Value {
    json!({
        "n_max": r.n_max,
        "cohomology_dims": r.cohomology_dims,
        "hypothesis_h2_generated_by_h1": r.h2_generated,
        "cup_product_rank": r.cup_rank,
        "hypothesis_no_new_cubic_relations": r.degree_three.holds(),
        "degree_three_generated_dim": r.degree_three.generated_dim,
        "degree_three_quadratic_dim": r.degree_three.quadratic_dim,
        "quadratic_part": presentation_json(&r.quadratic_part),
        "hypothesis_quadratic_part_koszul": verdict_json(&r.koszul),
        "hypotheses_hold": r.hypotheses_hold(),
        "graded_cohomology_dims": r.graded_cohomology_dims,
        "dims_agree": r.dims_agree(),
        "generated_in_degree_one": r.generated_in_degree_one,
        "graded_generated_in_degree_one": r.graded_generated_in_degree_one,
        "cohomology_quadratic_through": r.quadratic_through,
        "cohomology_quadratic": r.cohomology_quadratic(),
    })
}

/// Runs one command. `doc` must be present for document-based commands.
pub fn run(cli: &Cli, doc: Option<&InputDocument>) -> Result<Report> {
    let n = cli.max_degree;
    let name = cli.command.name();
    let need_doc = || doc.ok_or_else(|| Error::Precondition(format!("`{name}` needs an input document")));
    let mut warnings = Vec::new();
    let result = match &cli.command {
        Command::Homology { .. } => {
            let a = algebra_of(name, need_doc()?, n)?;
            let t = homology_table(&a, n)?;
            let mut r = table_json(&t);
            r["component_dims"] = json!(a.dims());
            r["quadratic"] = quadratic_report_json(&quadratic_verdict_algebra(&a, n)?);
            r
        }
        Command::Cohomology { allow_large, .. } => match need_doc()? {
            InputDocument::Presentation(p) => {
                let c = build_coalgebra_slice(p, n);
                let t = cohomology_table(&c, n)?;
                let mut r = table_json(&t);
                r["component_dims"] = json!(c.dims());
                r["quadratic"] = quadratic_report_json(&quadratic_verdict_coalgebra(&c, n)?);
                r
            }
            InputDocument::Group(g) => {
                let c = group_coalgebra(&g.group, g.field)?;
                check_cobar_size(c.dim(), n, *allow_large)?;
                let ring = CohomologyRing::new(c.data(), n)?;
                json!({
                    "group_order": g.group.order(),
                    "field": g.field.l(),
                    "cohomology_dims": ring.dims(),
                })
            }
            other => return Err(wrong_kind(name, other)),
        },
        Command::Koszul { criterion, .. } => {
            let p = match need_doc()? {
                InputDocument::Presentation(p) => p,
                other => return Err(wrong_kind(name, other)),
            };
            let mut r = Map::new();
            let by_h = matches!(criterion, Criterion::Homology | Criterion::Both)
                .then(|| koszul_by_homology(p, n))
                .transpose()?;
            let by_d = matches!(criterion, Criterion::Distributivity | Criterion::Both)
                .then(|| koszul_by_distributivity(p, n))
                .transpose()?;
            if let (Some(h), Some(d)) = (&by_h, &by_d) {
                if h.is_koszul() != d.is_koszul() || h.first_failure() != d.first_failure() {
                    return Err(Error::Internal(format!(
                        "criteria disagree: homology {:?}, distributivity {:?}",
                        h.first_failure(),
                        d.first_failure()
                    )));
                }
                // degrees past the first failure carry no expectation
                for deg in 3..=(d.koszul_up_to + 1).min(n) {
                    let col = SubspaceCollection::of_relations(p, deg);
                    match is_distributive_direct(&col, DEFAULT_LATTICE_BOUND) {
                        DirectDistributivity::Inconclusive { bound } => warnings.push(format!(
                            "direct lattice check in degree {deg} exceeded {bound} elements"
                        )),
                        direct => {
                            let expected = d.first_failure().is_none_or(|f| deg < f);
                            if direct.as_bool() != Some(expected) {
                                return Err(Error::Internal(format!(
                                    "direct lattice check disagrees in degree {deg}"
                                )));
                            }
                        }
                    }
                }
                r.insert("criteria_agree".into(), json!(true));
            }
            if by_h.is_some() {
                let t = homology_table(&build_algebra_slice(p, n), n)?;
                r.insert("algebra_diagonal".into(), json!(t.diagonal()));
            }
            if let Some(h) = &by_h {
                r.insert("homology".into(), verdict_json(h));
            }
            if let Some(d) = &by_d {
                r.insert("distributivity".into(), verdict_json(d));
            }
            let v = by_h.as_ref().or(by_d.as_ref()).expect("some criterion");
            r.insert("is_koszul".into(), json!(v.is_koszul()));
            r.insert("koszul_up_to".into(), json!(v.koszul_up_to));
            r.insert("presentation".into(), presentation_json(p));
            Value::Object(r)
        }
        Command::Dual { reading, .. } => {
            let p = match need_doc()? {
                InputDocument::Presentation(p) => p,
                other => return Err(wrong_kind(name, other)),
            };
            let reading = match reading {
                ReadingArg::Algebra => Reading::Algebra,
                ReadingArg::Coalgebra => Reading::Coalgebra,
            };
            let tagged = TaggedPresentation {
                presentation: p.clone(),
                reading,
            };
            let d = dual(&tagged);
            let dims: Vec<usize> = match d.reading {
                Reading::Algebra => (0..=n).map(|k| p.algebra_component(k).rows()).collect(),
                Reading::Coalgebra => (0..=n).map(|k| p.coalgebra_component(k).dim()).collect(),
            };
            let label = |r: Reading| match r {
                Reading::Algebra => "algebra",
                Reading::Coalgebra => "coalgebra",
            };
            json!({
                "input_reading": label(reading),
                "dual_reading": label(d.reading),
                "presentation": presentation_json(&d.presentation),
                "dual_component_dims": dims,
                "document": InputDocument::Presentation(d.presentation.clone()).to_text(),
            })
        }
        Command::QuadraticPart { .. } => {
            let doc = need_doc()?;
            let a = algebra_of(name, doc, n.max(2))?;
            let mut r = json!({ "algebra": quadratic_part_json(&quadratic_part_of_algebra(&a)?) });
            if let InputDocument::Presentation(p) = doc {
                let c = build_coalgebra_slice(p, n.max(2));
                r["coalgebra"] = quadratic_part_json(&quadratic_part_of_coalgebra(&c)?);
            }
            r
        }
        Command::Pbw { order, parity, .. } => {
            let a = algebra_of(name, need_doc()?, n)?;
            let parity = match parity {
                ParityArg::Commutative => Parity::Commutative,
                ParityArg::Skew => Parity::Skew,
            };
            let names = a.generator_names().to_vec();
            let gens = match order {
                Some(spec) => OrderedGenerators::parse(names, spec, parity)?,
                None => OrderedGenerators::natural(names, parity),
            };
            let rep = pbw_check(&a, &gens, n)?;
            let bases: Vec<Vec<String>> = rep
                .bases
                .iter()
                .map(|b| b.iter().map(|m| gens.render(m)).collect())
                .collect();
            let order_names: Vec<&str> = gens.order().iter().map(|&i| gens.names()[i].as_str()).collect();
            json!({
                "order": order_names.join("<"),
                "bases": bases,
                "predicted_s3": rep.predicted_s3.iter().map(|m| gens.render(m)).collect::<Vec<_>>(),
                "is_pbw": rep.is_pbw,
                "degree_four_matches": rep.degree_four_matches,
                "divisor_closed": rep.divisor_closed,
                "spans": rep.spans,
                "quadratic": rep.quadratic,
                "certified_koszul": rep.certified_koszul,
            })
        }
        Command::GroupCoalgebra { allow_large, .. } => {
            let g = match need_doc()? {
                InputDocument::Group(g) => g,
                other => return Err(wrong_kind(name, other)),
            };
            let c = group_coalgebra(&g.group, g.field)?;
            let checked = checked_filtration(&c, LITERAL_FILTRATION_BUDGET);
            if let Some(d) = &checked.diagnostic {
                warnings.push(d.clone());
            }
            let nilpotent = checked.filtration.is_full();
            let mut r = json!({
                "group_order": g.group.order(),
                "field": g.field.l(),
                "filtration_dims": checked.filtration.dims(),
                "filtration_checked_against_definition": checked.cross_checked,
                "nilpotent": nilpotent,
                "respects_comultiplication": filtration_respects_comultiplication(&c, &checked.filtration),
            });
            if nilpotent {
                let gr = associated_graded_from(&c, checked.filtration.clone())?;
                r["graded_dims"] = json!(gr.graded.dims());
                r["graded_one_cogenerated"] =
                    json!(crate::homology::one_cogenerated_verdict(&gr.graded, gr.graded.n_max())?);
                if n >= 3 {
                    check_cobar_size(c.dim(), n, *allow_large)?;
                    r["harness"] = harness_json(&comparison_harness(&c, n)?);
                }
            }
            r
        }
        Command::MilnorQ { l, pool_size, .. } => {
            let from_doc = match doc {
                Some(InputDocument::Milnor(m)) => Some(m.clone()),
                Some(other) => return Err(wrong_kind(name, other)),
                None => None,
            };
            let l = l.or(from_doc.as_ref().map(|m| m.l)).unwrap_or(2);
            let k = pool_size.or(from_doc.as_ref().map(|m| m.pool_size)).unwrap_or(4);
            let spec = RationalSymbolAlgebraSpec::new(l, k)?;
            let rep = verify_pbw_milnor(&spec, n)?;
            let q_of_r: Map<String, Value> =
                rep.split.q_of_r.iter().map(|(r, q)| (r.to_string(), json!(q))).collect();
            let order: Vec<&str> = rep
                .generators
                .order()
                .iter()
                .map(|&i| rep.generators.names()[i].as_str())
                .collect();
            json!({
                "l": l,
                "pool": spec.pool(),
                "include_minus_one": spec.include_minus_one(),
                "q_set": rep.split.q_set,
                "r_set": rep.split.r_set,
                "q_of_r": q_of_r,
                "order": order.join("<"),
                "component_dims": rep.dims,
                "s2": rep.s2,
                "predicted_s2": rep.predicted_s2,
                "s2_matches": rep.s2_matches(),
                "is_pbw": rep.pbw.is_pbw,
                "degree_four_matches": rep.pbw.degree_four_matches,
                "certified_koszul": rep.pbw.certified_koszul,
                "two_relations_vanish": rep.two_relations_vanish,
                "holds": rep.holds(),
            })
        }
        Command::FiniteField { p, k, l } => {
            let a = finite_field_example(*p, *k, *l, n.max(2))?;
            let q = quadratic_part_of_algebra(&a)?;
            let v = koszul_by_homology(&q.presentation, n.max(2))?;
            json!({
                "p": p,
                "k": k,
                "l": l,
                "component_dims": a.dims(),
                "koszul": verdict_json(&v),
            })
        }
    };
    Ok(Report {
        command: name.to_string(),
        result,
        warnings,
    })
}

/// Entry point for the binary: returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = std::time::Instant::now();
    let doc = match cli.command.document() {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", path.display());
                    return 1;
                }
            };
            match InputDocument::parse(&text) {
                Ok(d) => Some(d),
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return 1;
                }
            }
        }
        None => None,
    };
    match run(&cli, doc.as_ref()) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", report.render(cli.format));
            eprintln!("timing: {:.3}s", start.elapsed().as_secs_f64());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
