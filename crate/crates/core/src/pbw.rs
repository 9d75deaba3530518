//! Commutative PBW bases: greedy monomial bases with respect to the inverse
//! lexicographic order, the degree-three PBW test and the Koszulity it
//! certifies.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactla::EchelonBuilder;
use crate::homology::quadratic_verdict_algebra;
use crate::quadratic::GradedSliceAlgebra;

/// How degree-one generators interact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// `xy = yx`.
    Commutative,
    /// `xy = -yx` and `x² = 0` in odd characteristic; treated as
    /// [`Parity::Commutative`] in characteristic 2.
    Skew,
}

/// Degree-one generators with a strict total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGenerators {
    names: Vec<String>,
    /// `order[k]` is the basis index of the `k`-th smallest generator.
    order: Vec<usize>,
    parity: Parity,
}

impl OrderedGenerators {
    /// `order` lists basis indices from smallest to largest.
    pub fn new(names: Vec<String>, order: Vec<usize>, parity: Parity) -> Result<Self> {
        let mut seen = vec![false; names.len()];
        if order.len() != names.len() {
            return Err(Error::Precondition(format!(
                "order lists {} generators, expected {}",
                order.len(),
                names.len()
            )));
        }
        for &k in &order {
            if k >= names.len() || std::mem::replace(&mut seen[k], true) {
                return Err(Error::Precondition("order must list every generator exactly once".into()));
            }
        }
        Ok(Self { names, order, parity })
    }

    /// Generators in their basis order.
    pub fn natural(names: Vec<String>, parity: Parity) -> Self {
        let order = (0..names.len()).collect();
        Self { names, order, parity }
    }

    /// Parses `"x<y<z"`.
    pub fn parse(names: Vec<String>, spec: &str, parity: Parity) -> Result<Self> {
        let order = spec
            .split('<')
            .map(str::trim)
            .map(|tok| {
                names.iter().position(|n| n == tok).ok_or_else(|| {
                    Error::Precondition(format!("order mentions unknown generator `{tok}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, order, parity)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Basis indices of the generators of `m`, smallest first, with
    /// multiplicity.
    pub fn word(&self, m: &Monomial) -> Vec<usize> {
        m.0.iter()
            .enumerate()
            .flat_map(|(pos, &e)| std::iter::repeat_n(self.order[pos], e as usize))
            .collect()
    }

    /// `x^2*y`-style rendering.
    pub fn render(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(pos, &e)| {
                let name = &self.names[self.order[pos]];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Exponents indexed by position in the generator order (smallest first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// All monomials of degree `n` in `k` variables.
    pub fn all(k: usize, n: usize) -> Vec<Monomial> {
        fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if cur.len() + 1 == k {
                cur.push(left);
                out.push(Monomial(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(k, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k == 0 {
            if n == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(k, n as u32, &mut Vec::new(), &mut out);
        out
    }

    /// Divisors of degree `k`.
    pub fn divisors(&self, k: usize) -> Vec<Monomial> {
        Monomial::all(self.0.len(), k)
            .into_iter()
            .filter(|d| d.0.iter().zip(&self.0).all(|(a, b)| a <= b))
            .collect()
    }
}

/// Inverse lexicographic comparison of monomials of equal degree: at the
/// smallest generator where the exponents differ, the monomial with the
/// larger exponent is the smaller one. With `x < y` this gives
/// `x² < xy < y²`.
pub fn inverse_lex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.degree() != b.degree() || a.0.len() != b.0.len() {
        return Err(Error::Precondition("compared monomials must have equal degree".into()));
    }
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return Ok(other.reverse()),
        }
    }
    Ok(Ordering::Equal)
}

fn effective_parity(a: &GradedSliceAlgebra, parity: Parity) -> Parity {
    if a.field().l() == 2 {
        Parity::Commutative
    } else {
        parity
    }
}

/// Checks that monomials are well defined in `a` under the parity.
pub fn check_parity(a: &GradedSliceAlgebra, gens: &OrderedGenerators) -> Result<()> {
    if a.n_max() < 2 {
        return Ok(());
    }
    let f = a.field();
    let d = a.dim(1);
    if d != gens.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} ordered generators for A_1 of dimension {d}",
            gens.len()
        )));
    }
    let parity = effective_parity(a, gens.parity);
    for i in 0..d {
        for j in i..d {
            let xy = a.word_product(&[i, j]);
            let yx = a.word_product(&[j, i]);
            let (ok, what) = match parity {
                Parity::Commutative => (xy == yx, "commute"),
                Parity::Skew => {
                    let sum_zero = xy.iter().zip(&yx).all(|(&p, &q)| f.add(p, q) == 0);
                    (sum_zero && (i != j || xy.iter().all(|&v| v == 0)), "anticommute with zero squares")
                }
            };
            if !ok {
                return Err(Error::ParityViolation(format!(
                    "generators `{}` and `{}` do not {what}",
                    gens.names[i], gens.names[j]
                )));
            }
        }
    }
    Ok(())
}

/// `S_n`: scanning degree-`n` monomials in increasing inverse-lex order,
/// keep those whose image is independent of the images kept so far.
pub fn monomial_basis(a: &GradedSliceAlgebra, gens: &OrderedGenerators, n: usize) -> Result<Vec<Monomial>> {
    if n > a.n_max() {
        return Err(Error::DegreeTooLarge {
            requested: n,
            available: a.n_max(),
        });
    }
    check_parity(a, gens)?;
    let mut monomials = Monomial::all(gens.len(), n);
    monomials.sort_by(|x, y| inverse_lex_compare(x, y).expect("equal degrees"));
    let mut builder = EchelonBuilder::new(a.field(), a.dim(n));
    let mut kept = Vec::new();
    for m in monomials {
        let image = a.word_product(&gens.word(&m));
        if builder.insert(&image) {
            kept.push(m);
        }
    }
    Ok(kept)
}

/// Degree-`n` monomials all of whose degree-two divisors lie in `s2`.
pub fn pbw_prediction(k: usize, s2: &[Monomial], n: usize) -> Vec<Monomial> {
    let s2: BTreeSet<&Monomial> = s2.iter().collect();
    let mut out: Vec<Monomial> = Monomial::all(k, n)
        .into_iter()
        .filter(|m| m.divisors(2).iter().all(|d| s2.contains(d)))
        .collect();
    out.sort_by(|x, y| inverse_lex_compare(x, y).expect("equal degrees"));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwReport {
    /// `S_0, …, S_{min(n_max, 4)}`.
    pub bases: Vec<Vec<Monomial>>,
    pub predicted_s3: Vec<Monomial>,
    pub is_pbw: bool,
    /// Present when `n_max ≥ 4`: whether `S_4` matches the prediction from
    /// `S_2`.
    pub degree_four_matches: Option<bool>,
    /// Every divisor of a member of `S_n` lies in the basis of its degree.
    pub divisor_closed: bool,
    /// `|S_n| = dim A_n` for every computed `n`.
    pub spans: bool,
    pub quadratic: bool,
    pub certified_koszul: bool,
}

impl PbwReport {
    pub fn s(&self, n: usize) -> &[Monomial] {
        &self.bases[n]
    }
}

/// Computes `S_2`, `S_3` (and `S_4` when available) and the PBW verdict;
/// Koszulity is certified when the PBW condition holds and the algebra is
/// quadratic through `n_max`.
pub fn pbw_check(a: &GradedSliceAlgebra, gens: &OrderedGenerators, n_max: usize) -> Result<PbwReport> {
    if n_max < 3 || n_max > a.n_max() {
        return Err(Error::DegreeTooLarge {
            requested: n_max.max(3),
            available: a.n_max(),
        });
    }
    check_parity(a, gens)?;
    let top = n_max.min(4);
    let bases = (0..=top)
        .map(|n| monomial_basis(a, gens, n))
        .collect::<Result<Vec<_>>>()?;
    let k = gens.len();
    let predicted_s3 = pbw_prediction(k, &bases[2], 3);
    let is_pbw = bases[3] == predicted_s3;
    let degree_four_matches = (top >= 4).then(|| bases[4] == pbw_prediction(k, &bases[2], 4));
    let sets: Vec<BTreeSet<&Monomial>> = bases.iter().map(|b| b.iter().collect()).collect();
    let divisor_closed = (1..=top).all(|n| {
        bases[n]
            .iter()
            .all(|m| (1..n).all(|d| m.divisors(d).iter().all(|x| sets[d].contains(x))))
    });
    let spans = (0..=top).all(|n| bases[n].len() == a.dim(n));
    let quadratic = quadratic_verdict_algebra(a, n_max)?.is_quadratic();
    Ok(PbwReport {
        bases,
        predicted_s3,
        is_pbw,
        degree_four_matches,
        divisor_closed,
        spans,
        quadratic,
        certified_koszul: is_pbw && quadratic,
    })
}
