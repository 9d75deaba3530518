//! Augmented coalgebras: the augmentation filtration, nilpotence, the
//! associated graded coalgebra, function coalgebras of finite groups, and a
//! harness comparing `H^*(C)` with `H^*(gr C)`.

use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Subquotient, Subspace};
use crate::homology::{AugmentedCoalgebraData, CohomologyRing};
use crate::koszul::{koszul_by_homology, KoszulVerdict};
use crate::quadratic::{quadratic_part_of_algebra, GradedSliceAlgebra, GradedSliceCoalgebra, QuadraticPresentation};

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroupTable {
    /// `table[a][b]` is the index of `a·b`.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty element list".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidGroup(format!("duplicate element name {name}")));
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("multiplication table must be {n}x{n}")));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&x| x >= n) {
            return Err(Error::InvalidGroup(format!("table entry {bad} is not an element index")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return Err(Error::InvalidGroup(format!("{} has no inverse", names[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(Self { names, table, identity })
    }

    /// Builds a table from a multiplication rule on indices `0..n`.
    fn from_rule(names: Vec<String>, rule: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        let table = (0..n).map(|a| (0..n).map(|b| rule(a, b)).collect()).collect();
        Self::new(names, table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    /// `Z/n` with elements `0..n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        Self::from_rule((0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
    }

    /// `(Z/p)^k` with elements written as digit tuples.
    pub fn elementary_abelian(p: usize, k: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidGroup(format!("elementary abelian group needs p ≥ 2, got {p}")));
        }
        let order = p.checked_pow(k as u32).filter(|&o| o <= 1 << 12).ok_or_else(|| {
            Error::InvalidGroup(format!("(Z/{p})^{k} is too large"))
        })?;
        let digits = |mut x: usize| {
            let mut d = vec![0; k];
            for slot in d.iter_mut().rev() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let names = (0..order)
            .map(|x| {
                let parts: Vec<String> = digits(x).iter().map(usize::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Self::from_rule(names, |a, b| {
            digits(a)
                .iter()
                .zip(digits(b))
                .fold(0, |acc, (x, y)| acc * p + (x + y) % p)
        })
    }

    /// Dihedral group of order `2n`: `r^i` at index `i`, `s r^i` at `n + i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidGroup("dihedral group needs n ≥ 1".into()));
        }
        let names = (0..n)
            .map(|i| format!("r{i}"))
            .chain((0..n).map(|i| format!("sr{i}")))
            .collect();
        // s^e r^a · s^f r^b = s^{e+f} r^{(-1)^f a + b}
        Self::from_rule(names, |x, y| {
            let (e, a) = (x / n, x % n);
            let (f, b) = (y / n, y % n);
            let a = if f == 1 { (n - a) % n } else { a };
            ((e + f) % 2) * n + (a + b) % n
        })
    }

    /// Dicyclic group of order `4m`: `a^{2m} = 1`, `x^2 = a^m`,
    /// `x a x^{-1} = a^{-1}`. `a^i` sits at index `i`, `a^i x` at `2m + i`.
    pub fn dicyclic(m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidGroup("dicyclic group needs m ≥ 1".into()));
        }
        let half = 2 * m;
        let names = (0..half)
            .map(|i| format!("a{i}"))
            .chain((0..half).map(|i| format!("a{i}x")))
            .collect();
        Self::from_rule(names, |u, v| {
            let (e, i) = (u / half, u % half);
            let (f, j) = (v / half, v % half);
            match (e, f) {
                (0, _) => f * half + (i + j) % half,
                (_, 0) => half + (i + half - j) % half,
                _ => (i + half - j + m) % half,
            }
        })
    }

    /// Generalized quaternion group of order `2^k ≥ 8`.
    pub fn quaternion(order: usize) -> Result<Self> {
        if order < 8 || !order.is_power_of_two() {
            return Err(Error::InvalidGroup(format!(
                "quaternion groups have order a power of two ≥ 8, got {order}"
            )));
        }
        Self::dicyclic(order / 4)
    }

    pub fn direct_product(&self, other: &Self) -> Result<Self> {
        let m = other.order();
        let names = self
            .names
            .iter()
            .flat_map(|a| other.names.iter().map(move |b| format!("{a}:{b}")))
            .collect();
        Self::from_rule(names, |x, y| {
            self.table[x / m][y / m] * m + other.table[x % m][y % m]
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// An augmented coalgebra with memoized iterated comultiplications.
#[derive(Debug)]
pub struct AugmentedCoalgebra {
    data: AugmentedCoalgebraData,
    iterated: Mutex<Vec<Matrix>>,
}

impl Clone for AugmentedCoalgebra {
    fn clone(&self) -> Self {
        Self {
            data: self.data.clone(),
            iterated: Mutex::new(self.iterated.lock().expect("cache lock").clone()),
        }
    }
}

impl From<AugmentedCoalgebraData> for AugmentedCoalgebra {
    fn from(data: AugmentedCoalgebraData) -> Self {
        Self::new(data)
    }
}

impl AugmentedCoalgebra {
    pub fn new(data: AugmentedCoalgebraData) -> Self {
        let f = data.field();
        let counit = Matrix::from_reduced_rows(f, data.dim(), &[data.counit().to_vec()]);
        Self {
            iterated: Mutex::new(vec![counit, Matrix::identity(f, data.dim())]),
            data,
        }
    }

    pub fn data(&self) -> &AugmentedCoalgebraData {
        &self.data
    }

    pub fn field(&self) -> PrimeField {
        self.data.field()
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    /// `Δ^{(m)}: C -> C^{⊗m}`, with `Δ^{(0)} = ε` and `Δ^{(1)} = id`.
    pub fn iterated_comult(&self, m: usize) -> Matrix {
        let mut cache = self.iterated.lock().expect("cache lock");
        while cache.len() <= m {
            let prev = cache.last().expect("seeded cache");
            let id = Matrix::identity(self.field(), self.dim());
            let next = prev.kron(&id).mul(self.data.comult());
            cache.push(next);
        }
        cache[m].clone()
    }

    fn unit_line(&self) -> Subspace {
        Subspace::span(self.field(), self.dim(), &[self.data.coaugmentation().to_vec()])
    }
}

/// The function coalgebra `F_l(G)` with the convolution comultiplication.
pub fn group_coalgebra(g: &FiniteGroupTable, field: PrimeField) -> Result<AugmentedCoalgebra> {
    let n = g.order();
    let mut comult = Matrix::zeros(field, n * n, n);
    for h in 0..n {
        for k in 0..n {
            comult.add_to(h * n + k, g.multiply(h, k), 1);
        }
    }
    let mut counit = vec![0u32; n];
    counit[g.identity()] = 1;
    let data = AugmentedCoalgebraData::new(field, comult, counit, vec![1; n])?;
    Ok(AugmentedCoalgebra::new(data))
}

/// The increasing chain `N_0 ⊆ N_1 ⊆ …` up to the first repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    levels: Vec<Subspace>,
}

impl Filtration {
    pub fn levels(&self) -> &[Subspace] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &Subspace {
        &self.levels[n.min(self.levels.len() - 1)]
    }

    /// First index at which the chain stops growing.
    pub fn stabilization_index(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Subspace::dim).collect()
    }

    pub fn is_full(&self) -> bool {
        let top = self.levels.last().expect("nonempty filtration");
        top.dim() == top.ambient_dim()
    }
}

fn stabilize(first: Subspace, mut step: impl FnMut(usize, &Subspace) -> Subspace) -> Filtration {
    let mut levels = vec![first];
    loop {
        let n = levels.len();
        let next = step(n, &levels[n - 1]);
        if next == levels[n - 1] {
            return Filtration { levels };
        }
        levels.push(next);
    }
}

/// `N_n = Δ^{-1}(N_{n-1} ⊗ C + C ⊗ N_0)`.
pub fn augmentation_filtration(c: &AugmentedCoalgebra) -> Filtration {
    let f = c.field();
    let full = Subspace::full(f, c.dim());
    let n0 = c.unit_line();
    let right = full.tensor(&n0);
    stabilize(n0.clone(), |_, prev| {
        let target = prev.tensor(&full).sum(&right).expect("same ambient");
        target.preimage(c.data.comult())
    })
}

/// `N_n = ker(π^{⊗(n+1)} ∘ Δ^{(n+1)})` with `π: C -> C/γ(F_l)`, built
/// straight from the definition.
pub fn augmentation_filtration_literal(c: &AugmentedCoalgebra) -> Filtration {
    let n0 = c.unit_line();
    let pi = n0.quotient_map();
    let mut composite = pi.clone();
    stabilize(n0, |_, _| {
        composite = composite.kron(&pi).mul(c.data.comult());
        composite.kernel()
    })
}

/// Row budget for the literal filtration; it needs matrices with
/// `(dim C - 1)^{n+1}` rows.
pub const LITERAL_FILTRATION_BUDGET: usize = 1 << 16;

/// The filtration used by the rest of the module, with the outcome of the
/// comparison against the literal definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedFiltration {
    pub filtration: Filtration,
    /// Whether the literal definition was affordable and computed.
    pub cross_checked: bool,
    /// Set when the two computations disagree; the literal one is kept.
    pub diagnostic: Option<String>,
}

pub fn checked_filtration(c: &AugmentedCoalgebra, budget: usize) -> CheckedFiltration {
    let recursive = augmentation_filtration(c);
    let rows = (c.dim() - 1).checked_pow(recursive.stabilization_index() as u32 + 2);
    if rows.is_none_or(|r| r > budget) {
        return CheckedFiltration {
            filtration: recursive,
            cross_checked: false,
            diagnostic: None,
        };
    }
    let literal = augmentation_filtration_literal(c);
    let diagnostic = (literal != recursive).then(|| {
        format!(
            "recursive filtration {:?} disagrees with the definition {:?}; using the definition",
            recursive.dims(),
            literal.dims()
        )
    });
    CheckedFiltration {
        filtration: literal,
        cross_checked: true,
        diagnostic,
    }
}

pub fn is_nilpotent(c: &AugmentedCoalgebra) -> bool {
    checked_filtration(c, LITERAL_FILTRATION_BUDGET).filtration.is_full()
}

/// `gr_N C` together with the adapted basis used to build it.
#[derive(Debug, Clone)]
pub struct AssociatedGraded {
    pub filtration: Filtration,
    /// Columns are the adapted basis, grouped by filtration level.
    pub adapted_basis: Matrix,
    pub graded: GradedSliceCoalgebra,
}

/// Whether `Δ(N_n) ⊆ Σ_{i+j=n} N_i ⊗ N_j` for every `n` in the chain.
pub fn filtration_respects_comultiplication(c: &AugmentedCoalgebra, filtration: &Filtration) -> bool {
    let f = c.field();
    let top = filtration.stabilization_index();
    (0..=top).all(|n| {
        let target = (0..=n).fold(Subspace::zero(f, c.dim() * c.dim()), |acc, i| {
            let piece = filtration.level(i).tensor(filtration.level(n - i));
            acc.sum(&piece).expect("same ambient")
        });
        filtration.level(n).map(c.data.comult()).is_subspace_of(&target)
    })
}

pub fn associated_graded(c: &AugmentedCoalgebra) -> Result<AssociatedGraded> {
    associated_graded_from(c, checked_filtration(c, LITERAL_FILTRATION_BUDGET).filtration)
}

/// `gr_N C` for a filtration computed elsewhere.
pub fn associated_graded_from(c: &AugmentedCoalgebra, filtration: Filtration) -> Result<AssociatedGraded> {
    if !filtration.is_full() {
        return Err(Error::NotNilpotent);
    }
    if !filtration_respects_comultiplication(c, &filtration) {
        return Err(Error::Internal("comultiplication does not respect the augmentation filtration".into()));
    }
    let f = c.field();
    let d = c.dim();
    let top = filtration.stabilization_index();
    let mut columns = vec![c.data.coaugmentation().to_vec()];
    let mut dims = vec![1];
    for n in 1..=top {
        let reps = Subquotient::new(filtration.level(n), filtration.level(n - 1))?.representatives();
        dims.push(reps.len());
        columns.extend(reps);
    }
    let basis = Matrix::from_columns(f, d, &columns);
    let inverse = basis
        .inverse()
        .ok_or_else(|| Error::Internal("adapted basis is singular".into()))?;
    let adapted = inverse.kron(&inverse).mul(c.data.comult()).mul(&basis);
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &k| {
            let o = *acc;
            *acc += k;
            Some(o)
        })
        .collect();
    let mut comult = BTreeMap::new();
    for i in 1..=top {
        for j in 1..=top - i {
            let n = i + j;
            let mut m = Matrix::zeros(f, dims[i] * dims[j], dims[n]);
            for k in 0..dims[n] {
                for s in 0..dims[i] {
                    for t in 0..dims[j] {
                        let v = adapted.get((offsets[i] + s) * d + offsets[j] + t, offsets[n] + k);
                        if v != 0 {
                            m.set(s * dims[j] + t, k, v);
                        }
                    }
                }
            }
            comult.insert((i, j), m);
        }
    }
    let graded = GradedSliceCoalgebra::new(f, dims, comult)?;
    Ok(AssociatedGraded {
        filtration,
        adapted_basis: basis,
        graded,
    })
}

/// Hypothesis (2): generated classes in degree 3 versus `(qH)_3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeThreeCheck {
    pub generated_dim: usize,
    pub quadratic_dim: usize,
}

impl DegreeThreeCheck {
    pub fn holds(&self) -> bool {
        self.generated_dim == self.quadratic_dim
    }
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub n_max: usize,
    pub cohomology_dims: Vec<usize>,
    /// Rank of `H^1 ⊗ H^1 -> H^2`.
    pub cup_rank: usize,
    pub h2_generated: bool,
    pub degree_three: DegreeThreeCheck,
    /// `qH = (H^1, ker(H^1 ⊗ H^1 -> H^2))`.
    pub quadratic_part: QuadraticPresentation,
    pub koszul: KoszulVerdict,
    pub filtration_dims: Vec<usize>,
    pub graded_dims: Vec<usize>,
    pub graded_cohomology_dims: Vec<usize>,
    /// Per degree: whether `H^n` is spanned by products of `H^1`, for `C`
    /// and for `gr C`.
    pub generated_in_degree_one: Vec<bool>,
    pub graded_generated_in_degree_one: Vec<bool>,
    /// Largest `n ≤ n_max` with `(qH)_k -> H^k` bijective for all `k ≤ n`.
    pub quadratic_through: usize,
}

impl ComparisonReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.h2_generated && self.degree_three.holds() && self.koszul.is_koszul()
    }

    pub fn dims_agree(&self) -> bool {
        self.cohomology_dims == self.graded_cohomology_dims
    }

    pub fn cohomology_quadratic(&self) -> bool {
        self.quadratic_through >= self.n_max
    }
}

fn cohomology_algebra(ring: &CohomologyRing, n_max: usize) -> Result<GradedSliceAlgebra> {
    let mut mult = BTreeMap::new();
    for i in 1..=n_max {
        for j in 1..=n_max - i {
            mult.insert((i, j), ring.product_map(i, j)?);
        }
    }
    GradedSliceAlgebra::new(ring.field(), ring.dims(), mult)
}

fn generation_flags(ring: &CohomologyRing, n_max: usize) -> Result<Vec<bool>> {
    (0..=n_max)
        .map(|n| Ok(ring.generated_by_degree_one(n)?.dim() == ring.dim(n)))
        .collect()
}

/// Checks the three hypotheses and both conclusions through degree `n_max`.
pub fn comparison_harness(c: &AugmentedCoalgebra, n_max: usize) -> Result<ComparisonReport> {
    if n_max < 3 {
        return Err(Error::Precondition(format!(
            "the harness needs cohomology through degree 3, got n_max = {n_max}"
        )));
    }
    let gr = associated_graded(c)?;
    let f = c.field();
    let ring = CohomologyRing::new(c.data(), n_max)?;
    let cup = ring.product_map(1, 1)?;
    let cup_rank = cup.rank();
    let h1 = ring.dim(1);
    let quadratic_part = QuadraticPresentation::with_default_names(f, h1, cup.kernel())?;
    let degree_three = DegreeThreeCheck {
        generated_dim: ring.generated_by_degree_one(3)?.dim(),
        quadratic_dim: quadratic_part.algebra_component(3).rows(),
    };
    let koszul = koszul_by_homology(&quadratic_part, n_max)?;
    let algebra = cohomology_algebra(&ring, n_max)?;
    let quadratic_through = quadratic_part_of_algebra(&algebra)?.iso_through().min(n_max);

    let graded_data = AugmentedCoalgebraData::from_graded(&gr.graded);
    let graded_ring = CohomologyRing::new(&graded_data, n_max)?;

    Ok(ComparisonReport {
        n_max,
        cohomology_dims: ring.dims(),
        cup_rank,
        h2_generated: cup_rank == ring.dim(2),
        degree_three,
        quadratic_part,
        koszul,
        filtration_dims: gr.filtration.dims(),
        graded_dims: gr.graded.dims().to_vec(),
        graded_cohomology_dims: graded_ring.dims(),
        generated_in_degree_one: generation_flags(&ring, n_max)?,
        graded_generated_in_degree_one: generation_flags(&graded_ring, n_max)?,
        quadratic_through,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::quadratic_part_of_coalgebra;
    use crate::homology::one_cogenerated_verdict;

    fn f(l: u64) -> PrimeField {
        PrimeField::new(l).unwrap()
    }

    #[test]
    fn builtin_groups_are_groups() {
        assert_eq!(FiniteGroupTable::cyclic(5).unwrap().order(), 5);
        assert_eq!(FiniteGroupTable::elementary_abelian(2, 3).unwrap().order(), 8);
        assert_eq!(FiniteGroupTable::dihedral(4).unwrap().order(), 8);
        let q8 = FiniteGroupTable::quaternion(8).unwrap();
        // a unique element of order two
        let e = q8.identity();
        let involutions = (0..8).filter(|&x| x != e && q8.multiply(x, x) == e).count();
        assert_eq!(involutions, 1);
        assert_eq!(FiniteGroupTable::quaternion(16).unwrap().order(), 16);
        assert!(FiniteGroupTable::quaternion(12).is_err());
    }

    #[test]
    fn rejects_non_group_tables() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroupTable::new(names.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroupTable::new(names, vec![vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn iterated_comultiplication_is_coassociative() {
        let c = group_coalgebra(&FiniteGroupTable::cyclic(3).unwrap(), f(3)).unwrap();
        let d = c.dim();
        let delta = c.iterated_comult(2);
        for m in 2..=4 {
            for k in 0..=m {
                let lhs = c.iterated_comult(k).kron(&c.iterated_comult(m - k)).mul(&delta);
                assert_eq!(lhs, c.iterated_comult(m), "m = {m}, k = {k}");
            }
        }
        assert_eq!(c.iterated_comult(1), Matrix::identity(f(3), d));
    }

    #[test]
    fn trivial_and_small_filtrations() {
        let trivial = group_coalgebra(&FiniteGroupTable::trivial(), f(2)).unwrap();
        let fl = augmentation_filtration(&trivial);
        assert_eq!(fl.dims(), vec![1]);
        assert!(fl.is_full());

        let z2 = group_coalgebra(&FiniteGroupTable::cyclic(2).unwrap(), f(2)).unwrap();
        assert_eq!(augmentation_filtration(&z2).dims(), vec![1, 2]);
        assert!(is_nilpotent(&z2));

        let z3 = group_coalgebra(&FiniteGroupTable::cyclic(3).unwrap(), f(2)).unwrap();
        let fl = augmentation_filtration(&z3);
        assert_eq!(fl.dims(), vec![1]);
        assert!(!is_nilpotent(&z3));
        assert!(matches!(associated_graded(&z3), Err(Error::NotNilpotent)));
    }

    #[test]
    fn recursion_matches_literal_definition() {
        let cases = [
            (FiniteGroupTable::cyclic(2).unwrap(), 2),
            (FiniteGroupTable::cyclic(4).unwrap(), 2),
            (FiniteGroupTable::elementary_abelian(2, 2).unwrap(), 2),
            (FiniteGroupTable::cyclic(3).unwrap(), 3),
            (FiniteGroupTable::cyclic(3).unwrap(), 2),
            (FiniteGroupTable::dihedral(4).unwrap(), 2),
            (FiniteGroupTable::cyclic(6).unwrap(), 3),
        ];
        for (g, l) in cases {
            let c = group_coalgebra(&g, f(l)).unwrap();
            assert_eq!(augmentation_filtration(&c), augmentation_filtration_literal(&c));
        }
    }

    #[test]
    fn associated_graded_dimensions() {
        let cases = [
            (FiniteGroupTable::cyclic(2).unwrap(), 2, vec![1, 1]),
            (FiniteGroupTable::elementary_abelian(2, 2).unwrap(), 2, vec![1, 2, 1]),
            (FiniteGroupTable::cyclic(3).unwrap(), 3, vec![1, 1, 1]),
            (FiniteGroupTable::cyclic(4).unwrap(), 2, vec![1, 1, 1, 1]),
        ];
        for (g, l, dims) in cases {
            let c = group_coalgebra(&g, f(l)).unwrap();
            let gr = associated_graded(&c).unwrap();
            assert_eq!(gr.graded.dims(), dims.as_slice());
            let n = gr.graded.n_max();
            assert!(one_cogenerated_verdict(&gr.graded, n.max(1)).unwrap());
            if n >= 2 {
                assert!(quadratic_part_of_coalgebra(&gr.graded).is_ok());
            }
        }
    }

    #[test]
    fn quaternion_coalgebra_is_nilpotent() {
        let c = group_coalgebra(&FiniteGroupTable::quaternion(8).unwrap(), f(2)).unwrap();
        assert_eq!(c.dim(), 8);
        let fl = augmentation_filtration(&c);
        assert!(fl.is_full());
        assert!(fl.stabilization_index() <= 7);
    }

    #[test]
    fn harness_on_klein_four_group() {
        let c = group_coalgebra(&FiniteGroupTable::elementary_abelian(2, 2).unwrap(), f(2)).unwrap();
        let r = comparison_harness(&c, 4).unwrap();
        assert_eq!(r.cohomology_dims, vec![1, 2, 3, 4, 5]);
        assert!(r.h2_generated);
        assert!(r.degree_three.holds());
        assert!(r.koszul.is_koszul());
        assert!(r.dims_agree());
        assert!(r.cohomology_quadratic());
    }

    #[test]
    fn harness_on_cyclic_groups() {
        let z2 = group_coalgebra(&FiniteGroupTable::cyclic(2).unwrap(), f(2)).unwrap();
        let r = comparison_harness(&z2, 4).unwrap();
        assert_eq!(r.cohomology_dims, vec![1; 5]);
        assert!(r.hypotheses_hold());
        assert!(r.dims_agree());

        let z4 = group_coalgebra(&FiniteGroupTable::cyclic(4).unwrap(), f(2)).unwrap();
        let r = comparison_harness(&z4, 4).unwrap();
        assert!(!r.h2_generated);
        assert_eq!(r.cohomology_dims.len(), 5);
        assert_eq!(r.graded_cohomology_dims.len(), 5);
    }
}
