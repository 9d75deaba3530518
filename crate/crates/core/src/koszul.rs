//! Distributivity of finite collections of subspaces and the two Koszulity
//! criteria for quadratic presentations: off-diagonal vanishing of the
//! (co)homology tables, and distributivity of the relation collections
//! `{V^{⊗(k-1)} ⊗ R ⊗ V^{⊗(n-k-1)}}_k` in every `V^{⊗n}`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::exactla::{FiniteComplex, Matrix, Orientation, PrimeField, Subspace};
use crate::homology::{homology_table, cohomology_table, BarComplex, CobarComplex};
use crate::quadratic::{build_algebra_slice, build_coalgebra_slice, QuadraticPresentation};

/// Subspaces `X_1, …, X_m` of a common ambient space `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceCollection {
    field: PrimeField,
    ambient: usize,
    members: Vec<Subspace>,
}

impl SubspaceCollection {
    pub fn new(field: PrimeField, ambient: usize, members: Vec<Subspace>) -> Result<Self> {
        if members.len() > 20 {
            return Err(Error::Precondition("collections are limited to 20 members".into()));
        }
        for (k, m) in members.iter().enumerate() {
            if m.ambient_dim() != ambient || m.field() != field {
                return Err(Error::DimensionMismatch(format!(
                    "member {k} lives in dimension {}, expected {ambient}",
                    m.ambient_dim()
                )));
            }
        }
        Ok(Self {
            field,
            ambient,
            members,
        })
    }

    /// The collection `{V^{⊗(k-1)} ⊗ R ⊗ V^{⊗(n-k-1)}}_{k=1..n-1}` in `V^{⊗n}`.
    pub fn of_relations(p: &QuadraticPresentation, n: usize) -> Self {
        let members = (1..n)
            .map(|k| p.embed_relations(k, n).expect("in range"))
            .collect();
        Self::new(p.field(), p.dim_v().pow(n as u32), members).expect("shared ambient")
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn subcollection(&self, indices: &[usize]) -> Result<Self> {
        let members = indices
            .iter()
            .map(|&k| {
                self.members
                    .get(k)
                    .cloned()
                    .ok_or_else(|| Error::IndexOutOfRange(format!("member {k}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.field, self.ambient, members)
    }

    fn intersection_of(&self, subset: &[usize]) -> Subspace {
        subset.iter().fold(Subspace::full(self.field, self.ambient), |acc, &k| {
            acc.intersect(&self.members[k]).expect("shared ambient")
        })
    }

    fn sum_of(&self, subset: &[usize]) -> Subspace {
        subset.iter().fold(Subspace::zero(self.field, self.ambient), |acc, &k| {
            acc.sum(&self.members[k]).expect("shared ambient")
        })
    }
}

/// Increasing `r`-element subsets of `0..m` in lexicographic order.
fn subsets(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in start..m {
            cur.push(k);
            rec(k + 1, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, r, &mut Vec::new(), &mut out);
    out
}

/// `W <- ⊕_s X_s <- ⊕_{s<t} X_s ∩ X_t <- … <- ⋂_s X_s`, with the component
/// omitting the `k`-th index of a subset carrying the sign `(-1)^k`.
pub fn b_lower_complex(col: &SubspaceCollection) -> Result<FiniteComplex> {
    let f = col.field;
    let m = col.len();
    let mut levels: Vec<Vec<(Vec<usize>, Subspace)>> = Vec::with_capacity(m + 1);
    for r in 0..=m {
        levels.push(
            subsets(m, r)
                .into_iter()
                .map(|s| {
                    let x = col.intersection_of(&s);
                    (s, x)
                })
                .collect(),
        );
    }
    let dims: Vec<usize> = levels
        .iter()
        .map(|lv| lv.iter().map(|(_, x)| x.dim()).sum())
        .collect();
    let mut maps = Vec::with_capacity(m);
    for r in 1..=m {
        let (src, dst) = (&levels[r], &levels[r - 1]);
        let dst_index: HashMap<&[usize], (usize, &Subspace)> = {
            let mut off = 0;
            dst.iter()
                .map(|(s, x)| {
                    let e = (s.as_slice(), (off, x));
                    off += x.dim();
                    e
                })
                .collect()
        };
        let mut map = Matrix::zeros(f, dims[r - 1], dims[r]);
        let mut col_off = 0;
        for (s, x) in src {
            for k in 0..s.len() {
                let mut t = s.clone();
                t.remove(k);
                let (row_off, y) = dst_index[t.as_slice()];
                let sign = f.sign(k);
                for (b, v) in x.vectors().iter().enumerate() {
                    for (a, c) in y.coordinates_unchecked(v).into_iter().enumerate() {
                        if c != 0 {
                            map.add_to(row_off + a, col_off + b, f.mul(sign, c));
                        }
                    }
                }
            }
            col_off += x.dim();
        }
        maps.push(map);
    }
    FiniteComplex::new(f, Orientation::Chain, dims, maps)
}

/// `W -> ⊕_s W/X_s -> ⊕_{s<t} W/(X_s + X_t) -> …`, signed like
/// [`b_lower_complex`]; quotients use free-column coordinates.
pub fn b_upper_complex(col: &SubspaceCollection) -> Result<FiniteComplex> {
    let f = col.field;
    let m = col.len();
    let mut levels: Vec<Vec<(Vec<usize>, Subspace, Matrix)>> = Vec::with_capacity(m + 1);
    for r in 0..=m {
        levels.push(
            subsets(m, r)
                .into_iter()
                .map(|s| {
                    let y = col.sum_of(&s);
                    let q = y.quotient_map();
                    (s, y, q)
                })
                .collect(),
        );
    }
    let dims: Vec<usize> = levels
        .iter()
        .map(|lv| lv.iter().map(|(_, _, q)| q.rows()).sum())
        .collect();
    let mut maps = Vec::with_capacity(m);
    for r in 0..m {
        let (src, dst) = (&levels[r], &levels[r + 1]);
        let src_index: HashMap<&[usize], (usize, &Subspace)> = {
            let mut off = 0;
            src.iter()
                .map(|(s, y, q)| {
                    let e = (s.as_slice(), (off, y));
                    off += q.rows();
                    e
                })
                .collect()
        };
        let mut map = Matrix::zeros(f, dims[r + 1], dims[r]);
        let mut row_off = 0;
        for (t, _, qt) in dst {
            for k in 0..t.len() {
                let mut s = t.clone();
                s.remove(k);
                let (col_off, ys) = src_index[s.as_slice()];
                let sign = f.sign(k);
                for (b, &c) in ys.free_columns().iter().enumerate() {
                    for a in 0..qt.rows() {
                        let v = qt.get(a, c);
                        if v != 0 {
                            map.add_to(row_off + a, col_off + b, f.mul(sign, v));
                        }
                    }
                }
            }
            row_off += qt.rows();
        }
        maps.push(map);
    }
    FiniteComplex::new(f, Orientation::Cochain, dims, maps)
}

/// Result of the recursive distributivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distributivity {
    pub distributive: bool,
    /// A non-distributive subcollection all of whose proper subcollections
    /// are distributive (indices into the collection).
    pub witness: Option<Vec<usize>>,
}

fn mask_members(mask: u32) -> Vec<usize> {
    (0..32).filter(|k| mask & (1 << k) != 0).collect()
}

/// Collections of at most two members are distributive; a larger one is
/// distributive iff all its proper subcollections are and its
/// [`b_lower_complex`] is exact away from `W`. Subcollection results are
/// memoized over the subset lattice.
pub fn is_distributive(col: &SubspaceCollection) -> Result<Distributivity> {
    fn failing(
        col: &SubspaceCollection,
        mask: u32,
        memo: &mut HashMap<u32, Option<u32>>,
    ) -> Result<Option<u32>> {
        if let Some(&r) = memo.get(&mask) {
            return Ok(r);
        }
        let members = mask_members(mask);
        let result = if members.len() <= 2 {
            None
        } else {
            let mut found = None;
            for &k in &members {
                if let Some(w) = failing(col, mask & !(1 << k), memo)? {
                    found = Some(w);
                    break;
                }
            }
            match found {
                Some(w) => Some(w),
                None => {
                    let sub = col.subcollection(&members)?;
                    let cx = b_lower_complex(&sub)?;
                    if cx.is_exact_except(&[0]) {
                        None
                    } else {
                        Some(mask)
                    }
                }
            }
        };
        memo.insert(mask, result);
        Ok(result)
    }
    let full = if col.is_empty() { 0 } else { (1u32 << col.len()) - 1 };
    let mut memo = HashMap::new();
    let w = failing(col, full, &mut memo)?;
    Ok(Distributivity {
        distributive: w.is_none(),
        witness: w.map(mask_members),
    })
}

/// Re-checks a witness from [`is_distributive`]: every proper subcollection
/// is distributive and the B_* complex of the witness is not exact.
pub fn replay_distributivity_witness(col: &SubspaceCollection, witness: &[usize]) -> Result<bool> {
    let sub = col.subcollection(witness)?;
    if sub.len() <= 2 {
        return Ok(false);
    }
    for k in 0..sub.len() {
        let rest: Vec<usize> = (0..sub.len()).filter(|&t| t != k).collect();
        if !is_distributive(&sub.subcollection(&rest)?)?.distributive {
            return Ok(false);
        }
    }
    Ok(!b_lower_complex(&sub)?.is_exact_except(&[0]))
}

/// Outcome of the lattice-closure oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectDistributivity {
    Distributive { lattice_size: usize },
    /// `(x + y) ∩ z ≠ x∩z + y∩z` for the lattice elements `[x, y, z]`.
    NotDistributive(Box<[Subspace; 3]>),
    /// The closure exceeded the element bound.
    Inconclusive { bound: usize },
}

impl DirectDistributivity {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Self::Distributive { .. } => Some(true),
            Self::NotDistributive(_) => Some(false),
            Self::Inconclusive { .. } => None,
        }
    }
}

pub const DEFAULT_LATTICE_BOUND: usize = 512;

/// Closes the collection under sums and intersections and checks
/// `(x + y) ∩ z = x∩z + y∩z` on all triples of the closure.
pub fn is_distributive_direct(col: &SubspaceCollection, bound: usize) -> DirectDistributivity {
    let mut elements: Vec<Subspace> = Vec::new();
    let mut seen: HashMap<Subspace, usize> = HashMap::new();
    let mut push = |s: Subspace, elements: &mut Vec<Subspace>| -> usize {
        if let Some(&k) = seen.get(&s) {
            return k;
        }
        seen.insert(s.clone(), elements.len());
        elements.push(s);
        elements.len() - 1
    };
    for m in col.members() {
        push(m.clone(), &mut elements);
    }
    let mut join: HashMap<(usize, usize), usize> = HashMap::new();
    let mut meet: HashMap<(usize, usize), usize> = HashMap::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    loop {
        let n = elements.len();
        if n > bound {
            return DirectDistributivity::Inconclusive { bound };
        }
        let mut grew = false;
        for a in 0..n {
            for b in a..n {
                if !done.insert((a, b)) {
                    continue;
                }
                let s = elements[a].sum(&elements[b]).expect("shared ambient");
                let i = elements[a].intersect(&elements[b]).expect("shared ambient");
                let js = push(s, &mut elements);
                let mi = push(i, &mut elements);
                join.insert((a, b), js);
                join.insert((b, a), js);
                meet.insert((a, b), mi);
                meet.insert((b, a), mi);
                if elements.len() > bound {
                    return DirectDistributivity::Inconclusive { bound };
                }
            }
        }
        if elements.len() > n {
            grew = true;
        }
        if !grew {
            break;
        }
    }
    let n = elements.len();
    for x in 0..n {
        for y in 0..n {
            let xy = join[&(x, y)];
            for z in 0..n {
                let lhs = meet[&(xy, z)];
                let rhs = join[&(meet[&(x, z)], meet[&(y, z)])];
                if lhs != rhs {
                    return DirectDistributivity::NotDistributive(Box::new([
                        elements[x].clone(),
                        elements[y].clone(),
                        elements[z].clone(),
                    ]));
                }
            }
        }
    }
    DirectDistributivity::Distributive { lattice_size: n }
}

/// Which table a homological witness was read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Algebra,
    Coalgebra,
}

/// Evidence for a Koszulity failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A non-distributive subcollection of the relation collection in
    /// `V^{⊗degree}`; `positions` are the `k` in `V^{⊗(k-1)} ⊗ R ⊗ …`.
    Subcollection { degree: usize, positions: Vec<usize> },
    /// A nonzero off-diagonal entry.
    Bidegree { side: Side, i: usize, j: usize, dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulVerdict {
    pub n_max: usize,
    pub koszul_up_to: usize,
    pub witness: Option<Witness>,
}

impl KoszulVerdict {
    pub fn is_koszul(&self) -> bool {
        self.witness.is_none()
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.witness.as_ref().map(|w| match w {
            Witness::Subcollection { degree, .. } => *degree,
            Witness::Bidegree { j, .. } => *j,
        })
    }

    /// Recomputes the witness from scratch for `p`.
    pub fn replay(&self, p: &QuadraticPresentation) -> Result<bool> {
        match &self.witness {
            None => Ok(true),
            Some(Witness::Subcollection { degree, positions }) => {
                let col = SubspaceCollection::of_relations(p, *degree);
                let idx: Vec<usize> = positions.iter().map(|k| k - 1).collect();
                replay_distributivity_witness(&col, &idx)
            }
            Some(Witness::Bidegree { side, i, j, dim }) => {
                let got = match side {
                    Side::Algebra => BarComplex::from_graded(&build_algebra_slice(p, *j))
                        .complex(*j, (*i + 1).min(*j))?
                        .homology_dim(*i)?,
                    Side::Coalgebra => CobarComplex::from_graded(&build_coalgebra_slice(p, *j))
                        .complex(*j, (*i + 1).min(*j))?
                        .homology_dim(*i)?,
                };
                Ok(i < j && got == *dim && got > 0)
            }
        }
    }
}

fn check_degree(n_max: usize) -> Result<()> {
    if n_max < 2 {
        return Err(Error::Precondition("Koszulity checks need n_max ≥ 2".into()));
    }
    Ok(())
}

/// Distributivity of the relation collection in each `V^{⊗n}`, `n ≤ n_max`.
pub fn koszul_by_distributivity(p: &QuadraticPresentation, n_max: usize) -> Result<KoszulVerdict> {
    check_degree(n_max)?;
    for n in 3..=n_max {
        let col = SubspaceCollection::of_relations(p, n);
        let d = is_distributive(&col)?;
        if let Some(w) = d.witness {
            return Ok(KoszulVerdict {
                n_max,
                koszul_up_to: n - 1,
                witness: Some(Witness::Subcollection {
                    degree: n,
                    positions: w.into_iter().map(|k| k + 1).collect(),
                }),
            });
        }
    }
    Ok(KoszulVerdict {
        n_max,
        koszul_up_to: n_max,
        witness: None,
    })
}

fn first_off_diagonal(t: &crate::homology::BigradedTable, side: Side) -> Option<Witness> {
    t.off_diagonal_nonzero()
        .into_iter()
        .min_by_key(|&(i, j, _)| (j, i))
        .map(|(i, j, dim)| Witness::Bidegree { side, i, j, dim })
}

/// Off-diagonal vanishing of both `H_{ij}({V,R})` and `H^{ij}(⟨V,R⟩)`.
/// The two tables must fail in the same degree; a disagreement is an
/// internal error.
pub fn koszul_by_homology(p: &QuadraticPresentation, n_max: usize) -> Result<KoszulVerdict> {
    check_degree(n_max)?;
    let ta = homology_table(&build_algebra_slice(p, n_max), n_max)?;
    let tc = cohomology_table(&build_coalgebra_slice(p, n_max), n_max)?;
    let wa = first_off_diagonal(&ta, Side::Algebra);
    let wc = first_off_diagonal(&tc, Side::Coalgebra);
    let degree = |w: &Option<Witness>| match w {
        Some(Witness::Bidegree { j, .. }) => Some(*j),
        _ => None,
    };
    if degree(&wa) != degree(&wc) {
        return Err(Error::Internal(format!(
            "algebra and coalgebra tables disagree: first failures {:?} and {:?}",
            degree(&wa),
            degree(&wc)
        )));
    }
    Ok(KoszulVerdict {
        n_max,
        koszul_up_to: degree(&wa).map_or(n_max, |j| j - 1),
        witness: wa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(l: u64) -> PrimeField {
        PrimeField::new(l).unwrap()
    }

    fn three_lines() -> SubspaceCollection {
        let fl = f(3);
        let lines = [vec![1, 0], vec![0, 1], vec![1, 1]]
            .into_iter()
            .map(|v| Subspace::span(fl, 2, &[v]))
            .collect();
        SubspaceCollection::new(fl, 2, lines).unwrap()
    }

    #[test]
    fn lower_complex_of_three_lines() {
        let cx = b_lower_complex(&three_lines()).unwrap();
        assert_eq!(cx.spaces(), &[2, 3, 0, 0]);
        assert_eq!(cx.homology_dim(1).unwrap(), 1);
        assert!(!cx.is_exact_except(&[0]));
        let up = b_upper_complex(&three_lines()).unwrap();
        assert!(!up.is_exact_except(&[0]));
    }

    #[test]
    fn single_and_pairs() {
        let fl = f(2);
        let x = Subspace::span(fl, 2, &[vec![1, 0]]);
        let y = Subspace::span(fl, 2, &[vec![0, 1]]);
        let single = SubspaceCollection::new(fl, 2, vec![x.clone()]).unwrap();
        assert!(b_lower_complex(&single).unwrap().is_exact_except(&[0]));
        let pair = SubspaceCollection::new(fl, 2, vec![x, y]).unwrap();
        let cx = b_lower_complex(&pair).unwrap();
        assert_eq!(cx.homology_dim(1).unwrap(), 0);
        assert!(b_upper_complex(&pair).unwrap().is_exact_except(&[0]));
        assert!(is_distributive(&pair).unwrap().distributive);
        assert_eq!(is_distributive_direct(&pair, 512).as_bool(), Some(true));
    }

    #[test]
    fn full_member_collapses_upper_complex() {
        let fl = f(3);
        let col = SubspaceCollection::new(
            fl,
            2,
            vec![Subspace::full(fl, 2), Subspace::span(fl, 2, &[vec![1, 2]])],
        )
        .unwrap();
        let up = b_upper_complex(&col).unwrap();
        assert_eq!(up.spaces(), &[2, 1, 0]);
        assert!(up.is_exact_except(&[0]));
    }

    #[test]
    fn three_lines_fail_both_tests() {
        let col = three_lines();
        let d = is_distributive(&col).unwrap();
        assert!(!d.distributive);
        assert_eq!(d.witness, Some(vec![0, 1, 2]));
        assert!(replay_distributivity_witness(&col, &[0, 1, 2]).unwrap());
        assert_eq!(is_distributive_direct(&col, 512).as_bool(), Some(false));
    }

    #[test]
    fn coordinate_subspaces_are_distributive() {
        let fl = f(2);
        let e = |bits: &[usize]| {
            let rows: Vec<Vec<u32>> = bits
                .iter()
                .map(|&b| (0..3).map(|k| u32::from(k == b)).collect())
                .collect();
            Subspace::span(fl, 3, &rows)
        };
        let col = SubspaceCollection::new(fl, 3, vec![e(&[0]), e(&[0, 1]), e(&[1, 2]), e(&[2])]).unwrap();
        assert!(is_distributive(&col).unwrap().distributive);
        assert_eq!(is_distributive_direct(&col, 512).as_bool(), Some(true));
    }

    #[test]
    fn inconclusive_when_bound_is_tiny() {
        assert_eq!(
            is_distributive_direct(&three_lines(), 2),
            DirectDistributivity::Inconclusive { bound: 2 }
        );
    }

    #[test]
    fn symmetric_algebra_is_koszul() {
        let p = QuadraticPresentation::from_symbolic(f(3), &["x", "y"], &["x*y - y*x"]).unwrap();
        let col = SubspaceCollection::of_relations(&p, 3);
        assert_eq!(is_distributive_direct(&col, 512).as_bool(), Some(true));
        let d = koszul_by_distributivity(&p, 4).unwrap();
        let h = koszul_by_homology(&p, 4).unwrap();
        assert!(d.is_koszul() && h.is_koszul());
        assert_eq!(d.koszul_up_to, 4);
    }

    #[test]
    fn trivial_relation_sets_are_koszul() {
        let fl = f(2);
        let free = QuadraticPresentation::with_default_names(fl, 2, Subspace::zero(fl, 4)).unwrap();
        assert!(koszul_by_distributivity(&free, 5).unwrap().is_koszul());
        let full = QuadraticPresentation::with_default_names(fl, 2, Subspace::full(fl, 4)).unwrap();
        assert!(koszul_by_distributivity(&full, 5).unwrap().is_koszul());
        let poly = QuadraticPresentation::with_default_names(fl, 1, Subspace::zero(fl, 1)).unwrap();
        assert!(koszul_by_homology(&poly, 4).unwrap().is_koszul());
    }

    #[test]
    fn non_koszul_example_agrees() {
        let p = QuadraticPresentation::from_symbolic(f(2), &["x", "y"], &["x*y", "y*x + x*x"]).unwrap();
        let d = koszul_by_distributivity(&p, 4).unwrap();
        let h = koszul_by_homology(&p, 4).unwrap();
        assert_eq!(d.first_failure(), Some(4));
        assert_eq!(h.first_failure(), Some(4));
        assert_eq!(d.koszul_up_to, 3);
        assert!(d.replay(&p).unwrap());
        assert!(h.replay(&p).unwrap());
        assert!(!koszul_by_distributivity(&p, 5).unwrap().is_koszul());
    }
}
