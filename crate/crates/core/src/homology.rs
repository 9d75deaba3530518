//! Bar and cobar complexes, their (bigraded) (co)homology, the explicit
//! contracting homotopies of the resolutions, and the verdicts read off the
//! first rows of the tables.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactla::{FiniteComplex, Matrix, Orientation, PrimeField, Subquotient, Subspace};
use crate::quadratic::{
    quadratic_part_of_algebra, quadratic_part_of_coalgebra, GradedSliceAlgebra, GradedSliceCoalgebra,
};
use crate::tensor;

type SparseVec = Vec<(usize, u32)>;

fn sparse(v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i, x))
        .collect()
}

/// A finite-dimensional associative unital algebra with an augmentation.
#[derive(Debug, Clone)]
pub struct AugmentedAlgebraData {
    field: PrimeField,
    dim: usize,
    /// `A ⊗ A -> A`.
    mult: Matrix,
    unit: Vec<u32>,
    augmentation: Vec<u32>,
    products: Vec<Vec<SparseVec>>,
}

impl AugmentedAlgebraData {
    /// Checks associativity, the unit laws and multiplicativity of the
    /// augmentation on all basis elements.
    pub fn new(field: PrimeField, mult: Matrix, unit: Vec<u32>, augmentation: Vec<u32>) -> Result<Self> {
        let dim = unit.len();
        if mult.rows() != dim || mult.cols() != dim * dim || augmentation.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "multiplication {}x{} for an algebra of dimension {dim}",
                mult.rows(),
                mult.cols()
            )));
        }
        let products: Vec<Vec<SparseVec>> = (0..dim)
            .map(|x| (0..dim).map(|y| sparse(&mult.column(x * dim + y))).collect())
            .collect();
        let a = Self {
            field,
            dim,
            mult,
            unit,
            augmentation,
            products,
        };
        a.validate()?;
        Ok(a)
    }

    /// The truncation `A / A_{>n_max}` of a graded slice as an ungraded
    /// augmented algebra; the basis is `A_0 ⊕ A_1 ⊕ …` in order.
    pub fn from_graded(a: &GradedSliceAlgebra) -> Self {
        let f = a.field();
        let n_max = a.n_max();
        let dim = a.total_dim();
        let mut mult = Matrix::zeros(f, dim, dim * dim);
        let mut degree_of = Vec::with_capacity(dim);
        for n in 0..=n_max {
            for k in 0..a.dim(n) {
                degree_of.push((n, k));
            }
        }
        for (x, &(i, s)) in degree_of.iter().enumerate() {
            for (y, &(j, t)) in degree_of.iter().enumerate() {
                if i + j > n_max {
                    continue;
                }
                let col = x * dim + y;
                if i == 0 {
                    mult.set(a.offset(j) + t, col, 1);
                } else if j == 0 {
                    mult.set(a.offset(i) + s, col, 1);
                } else {
                    let m = a.mult(i, j);
                    let src = s * a.dim(j) + t;
                    for r in 0..m.rows() {
                        let v = m.get(r, src);
                        if v != 0 {
                            mult.set(a.offset(i + j) + r, col, v);
                        }
                    }
                }
            }
        }
        let mut unit = vec![0u32; dim];
        unit[0] = 1;
        let augmentation = unit.clone();
        Self::new(f, mult, unit, augmentation).expect("graded slices are augmented algebras")
    }

    fn product(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let c = f.mul(xa, yb);
                for &(r, v) in &self.products[a][b] {
                    out[r] = f.add(out[r], f.mul(c, v));
                }
            }
        }
        out
    }

    fn augment(&self, x: &[u32]) -> u32 {
        x.iter()
            .zip(&self.augmentation)
            .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
    }

    fn validate(&self) -> Result<()> {
        let f = self.field;
        let dim = self.dim;
        let e = |k: usize| {
            let mut v = vec![0u32; dim];
            v[k] = 1;
            v
        };
        for x in 0..dim {
            let ex = e(x);
            if self.product(&self.unit, &ex) != ex || self.product(&ex, &self.unit) != ex {
                return Err(Error::InvalidStructure(format!("unit law fails on basis vector {x}")));
            }
        }
        if self.augment(&self.unit) != 1 {
            return Err(Error::InvalidStructure("augmentation does not send 1 to 1".into()));
        }
        for x in 0..dim {
            for y in 0..dim {
                let xy = self.product(&e(x), &e(y));
                let expected = f.mul(self.augmentation[x], self.augmentation[y]);
                if self.augment(&xy) != expected {
                    return Err(Error::InvalidStructure(format!(
                        "augmentation is not multiplicative on ({x},{y})"
                    )));
                }
                for z in 0..dim {
                    let left = self.product(&xy, &e(z));
                    let right = self.product(&e(x), &self.product(&e(y), &e(z)));
                    if left != right {
                        return Err(Error::InvalidStructure(format!(
                            "multiplication is not associative on ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn augmentation(&self) -> &[u32] {
        &self.augmentation
    }

    /// `A_+ = ker(a)` with its basis, the projection `A -> A_+`,
    /// `a ↦ a - a(a)·1`, and the induced multiplication.
    fn ideal(&self) -> AugmentationIdeal {
        let f = self.field;
        let aug = Matrix::from_reduced_rows(f, self.dim, std::slice::from_ref(&self.augmentation));
        let kernel = aug.kernel();
        let basis = kernel.vectors();
        let projection: Vec<SparseVec> = (0..self.dim)
            .map(|x| {
                let mut v = vec![0u32; self.dim];
                v[x] = 1;
                let ax = self.augmentation[x];
                for (slot, &u) in v.iter_mut().zip(&self.unit) {
                    *slot = f.sub(*slot, f.mul(ax, u));
                }
                sparse(&kernel.coordinates_unchecked(&v))
            })
            .collect();
        let k = basis.len();
        let mut merge = Matrix::zeros(f, k, k * k);
        for s in 0..k {
            for t in 0..k {
                let prod = self.product(&basis[s], &basis[t]);
                for (r, v) in kernel.coordinates_unchecked(&prod).into_iter().enumerate() {
                    if v != 0 {
                        merge.set(r, s * k + t, v);
                    }
                }
            }
        }
        AugmentationIdeal {
            inclusion: basis.iter().map(|b| sparse(b)).collect(),
            projection,
            merge,
        }
    }
}

struct AugmentationIdeal {
    inclusion: Vec<SparseVec>,
    projection: Vec<SparseVec>,
    merge: Matrix,
}

/// A finite-dimensional coassociative counital coalgebra with a
/// coaugmentation `γ: F_l -> C`.
#[derive(Debug, Clone)]
pub struct AugmentedCoalgebraData {
    field: PrimeField,
    dim: usize,
    /// `C -> C ⊗ C`.
    comult: Matrix,
    counit: Vec<u32>,
    coaugmentation: Vec<u32>,
    coproducts: Vec<Vec<(usize, usize, u32)>>,
}

impl AugmentedCoalgebraData {
    pub fn new(field: PrimeField, comult: Matrix, counit: Vec<u32>, coaugmentation: Vec<u32>) -> Result<Self> {
        let dim = counit.len();
        if comult.cols() != dim || comult.rows() != dim * dim || coaugmentation.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "comultiplication {}x{} for a coalgebra of dimension {dim}",
                comult.rows(),
                comult.cols()
            )));
        }
        let coproducts = (0..dim)
            .map(|x| {
                sparse(&comult.column(x))
                    .into_iter()
                    .map(|(idx, v)| (idx / dim, idx % dim, v))
                    .collect()
            })
            .collect();
        let c = Self {
            field,
            dim,
            comult,
            counit,
            coaugmentation,
            coproducts,
        };
        c.validate()?;
        Ok(c)
    }

    /// The graded slice as an ungraded coalgebra (a subcoalgebra of the
    /// full graded object); basis `C_0 ⊕ C_1 ⊕ …` in order.
    pub fn from_graded(c: &GradedSliceCoalgebra) -> Self {
        let f = c.field();
        let n_max = c.n_max();
        let dim = c.total_dim();
        let mut comult = Matrix::zeros(f, dim * dim, dim);
        for n in 0..=n_max {
            for k in 0..c.dim(n) {
                let col = c.offset(n) + k;
                // 1 ⊗ c and c ⊗ 1
                comult.add_to(col, col, 1);
                if n > 0 {
                    comult.add_to(col * dim, col, 1);
                }
                for i in 1..n {
                    let j = n - i;
                    let m = c.comult(i, j);
                    for r in 0..m.rows() {
                        let v = m.get(r, k);
                        if v != 0 {
                            let (s, t) = (r / c.dim(j), r % c.dim(j));
                            comult.set((c.offset(i) + s) * dim + c.offset(j) + t, col, v);
                        }
                    }
                }
            }
        }
        let mut counit = vec![0u32; dim];
        counit[0] = 1;
        let coaugmentation = counit.clone();
        Self::new(f, comult, counit, coaugmentation).expect("graded slices are augmented coalgebras")
    }

    fn coproduct(&self, x: &[u32]) -> BTreeMap<(usize, usize), u32> {
        let f = self.field;
        let mut out = BTreeMap::new();
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for &(s, t, v) in &self.coproducts[a] {
                let slot = out.entry((s, t)).or_insert(0);
                *slot = f.add(*slot, f.mul(xa, v));
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn validate(&self) -> Result<()> {
        let f = self.field;
        let dim = self.dim;
        for x in 0..dim {
            // counit laws
            let mut left = vec![0u32; dim];
            let mut right = vec![0u32; dim];
            for &(s, t, v) in &self.coproducts[x] {
                left[t] = f.add(left[t], f.mul(self.counit[s], v));
                right[s] = f.add(right[s], f.mul(self.counit[t], v));
            }
            let mut ex = vec![0u32; dim];
            ex[x] = 1;
            if left != ex || right != ex {
                return Err(Error::InvalidStructure(format!("counit law fails on basis vector {x}")));
            }
            // coassociativity
            let mut lhs: BTreeMap<(usize, usize, usize), u32> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), u32> = BTreeMap::new();
            for &(s, t, v) in &self.coproducts[x] {
                for &(a, b, w) in &self.coproducts[s] {
                    let e = lhs.entry((a, b, t)).or_insert(0);
                    *e = f.add(*e, f.mul(v, w));
                }
                for &(a, b, w) in &self.coproducts[t] {
                    let e = rhs.entry((s, a, b)).or_insert(0);
                    *e = f.add(*e, f.mul(v, w));
                }
            }
            lhs.retain(|_, v| *v != 0);
            rhs.retain(|_, v| *v != 0);
            if lhs != rhs {
                return Err(Error::InvalidStructure(format!(
                    "comultiplication is not coassociative on basis vector {x}"
                )));
            }
        }
        let g = &self.coaugmentation;
        let eps_g = g
            .iter()
            .zip(&self.counit)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
        if eps_g != 1 {
            return Err(Error::InvalidStructure("counit of γ(1) is not 1".into()));
        }
        let mut gg = BTreeMap::new();
        for (s, &gs) in g.iter().enumerate() {
            for (t, &gt) in g.iter().enumerate() {
                let v = f.mul(gs, gt);
                if v != 0 {
                    gg.insert((s, t), v);
                }
            }
        }
        if self.coproduct(g) != gg {
            return Err(Error::InvalidStructure("γ(1) is not group-like".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    pub fn counit(&self) -> &[u32] {
        &self.counit
    }

    pub fn coaugmentation(&self) -> &[u32] {
        &self.coaugmentation
    }

    /// `C^+ = C / γ(F_l)` in free-column coordinates, the section
    /// `σ(πc) = c - ε(c)γ(1)` and the induced reduced comultiplication.
    fn cokernel(&self) -> Cokernel {
        let f = self.field;
        let line = Subspace::span(f, self.dim, std::slice::from_ref(&self.coaugmentation));
        let quotient = line.quotient_map();
        let free = line.free_columns();
        let k = free.len();
        let mut section = Matrix::zeros(f, self.dim, k);
        for (col, &x) in free.iter().enumerate() {
            section.set(x, col, 1);
            let e = self.counit[x];
            for (r, &g) in self.coaugmentation.iter().enumerate() {
                section.add_to(r, col, f.neg(f.mul(e, g)));
            }
        }
        let mut reduced = Matrix::zeros(f, k * k, k);
        for col in 0..k {
            for ((s, t), v) in self.coproduct(&section.column(col)) {
                for &(a, va) in &sparse(&quotient.column(s)) {
                    for &(b, vb) in &sparse(&quotient.column(t)) {
                        reduced.add_to(a * k + b, col, f.mul(v, f.mul(va, vb)));
                    }
                }
            }
        }
        Cokernel {
            quotient,
            section,
            reduced,
        }
    }
}

struct Cokernel {
    quotient: Matrix,
    section: Matrix,
    reduced: Matrix,
}

/// Tensor factors of a (co)bar complex ("pieces") and the maps between
/// them. Graded inputs have one piece per internal degree `1..=n_max`;
/// ungraded inputs have a single piece.
#[derive(Debug, Clone)]
struct Pieces {
    field: PrimeField,
    dims: Vec<usize>,
    graded: bool,
    /// Piece `r` splits into `(s, t)` via a map `r -> s ⊗ t`.
    splits: Vec<Vec<(usize, usize, Matrix)>>,
    /// Pieces `(p, q)` merge into `r` via a map `p ⊗ q -> r`.
    merges: BTreeMap<(usize, usize), (usize, Matrix)>,
}

struct Layout {
    shapes: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    total: usize,
    index: HashMap<Vec<usize>, usize>,
}

impl Pieces {
    fn shapes(&self, i: usize, j: usize) -> Vec<Vec<usize>> {
        if self.graded {
            tensor::compositions(j, i, self.dims.len())
                .into_iter()
                .map(|c| c.into_iter().map(|p| p - 1).collect())
                .collect()
        } else {
            vec![vec![0; i]]
        }
    }

    fn block_dim(&self, shape: &[usize]) -> usize {
        shape.iter().map(|&p| self.dims[p]).product()
    }

    fn layout(&self, i: usize, j: usize) -> Layout {
        let shapes = self.shapes(i, j);
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        let mut index = HashMap::new();
        for (k, s) in shapes.iter().enumerate() {
            offsets.push(total);
            total += self.block_dim(s);
            index.insert(s.clone(), k);
        }
        Layout {
            shapes,
            offsets,
            total,
            index,
        }
    }

    fn strand_dim(&self, i: usize, j: usize) -> usize {
        self.layout(i, j).total
    }

    /// Adds `sign · (I_left ⊗ m ⊗ I_right)` into `out` at the given offsets.
    #[allow(clippy::too_many_arguments)]
    fn place(
        &self,
        out: &mut Matrix,
        row_off: usize,
        col_off: usize,
        left: usize,
        m: &Matrix,
        right: usize,
        sign: u32,
    ) {
        let f = self.field;
        for a in 0..m.rows() {
            for b in 0..m.cols() {
                let v = m.get(a, b);
                if v == 0 {
                    continue;
                }
                let v = f.mul(sign, v);
                for l in 0..left {
                    for r in 0..right {
                        out.add_to(
                            row_off + (l * m.rows() + a) * right + r,
                            col_off + (l * m.cols() + b) * right + r,
                            v,
                        );
                    }
                }
            }
        }
    }

    /// Cobar differential: strand `(i, j)` to strand `(i + 1, j)`, a split
    /// at (0-based) position `k` carrying the sign `(-1)^k`.
    fn cobar_map(&self, i: usize, j: usize) -> Matrix {
        let src = self.layout(i, j);
        let dst = self.layout(i + 1, j);
        let mut out = Matrix::zeros(self.field, dst.total, src.total);
        for (si, shape) in src.shapes.iter().enumerate() {
            for k in 0..shape.len() {
                let left = self.block_dim(&shape[..k]);
                let right = self.block_dim(&shape[k + 1..]);
                for (s, t, m) in &self.splits[shape[k]] {
                    let mut target = shape[..k].to_vec();
                    target.extend([*s, *t]);
                    target.extend_from_slice(&shape[k + 1..]);
                    let Some(&di) = dst.index.get(&target) else {
                        continue;
                    };
                    self.place(&mut out, dst.offsets[di], src.offsets[si], left, m, right, self.field.sign(k));
                }
            }
        }
        out
    }

    /// Bar differential: strand `(i, j)` to strand `(i - 1, j)`, merging
    /// positions `(k, k + 1)` with the sign `(-1)^k`.
    fn bar_map(&self, i: usize, j: usize) -> Matrix {
        let src = self.layout(i, j);
        let dst = self.layout(i - 1, j);
        let mut out = Matrix::zeros(self.field, dst.total, src.total);
        for (si, shape) in src.shapes.iter().enumerate() {
            for k in 0..shape.len().saturating_sub(1) {
                let Some((r, m)) = self.merges.get(&(shape[k], shape[k + 1])) else {
                    continue;
                };
                let mut target = shape[..k].to_vec();
                target.push(*r);
                target.extend_from_slice(&shape[k + 2..]);
                let di = dst.index[&target];
                let left = self.block_dim(&shape[..k]);
                let right = self.block_dim(&shape[k + 2..]);
                self.place(&mut out, dst.offsets[di], src.offsets[si], left, m, right, self.field.sign(k));
            }
        }
        out
    }
}

/// The reduced cobar complex `F_l -> C^+ -> C^+ ⊗ C^+ -> …`, strand by
/// strand.
#[derive(Debug, Clone)]
pub struct CobarComplex {
    pieces: Pieces,
}

impl CobarComplex {
    pub fn from_graded(c: &GradedSliceCoalgebra) -> Self {
        let n_max = c.n_max();
        let splits = (1..=n_max)
            .map(|n| {
                (1..n)
                    .map(|i| (i - 1, n - i - 1, c.comult(i, n - i).clone()))
                    .collect()
            })
            .collect();
        Self {
            pieces: Pieces {
                field: c.field(),
                dims: c.dims()[1..].to_vec(),
                graded: true,
                splits,
                merges: BTreeMap::new(),
            },
        }
    }

    pub fn from_augmented(c: &AugmentedCoalgebraData) -> Self {
        let ck = c.cokernel();
        Self {
            pieces: Pieces {
                field: c.field(),
                dims: vec![ck.quotient.rows()],
                graded: false,
                splits: vec![vec![(0, 0, ck.reduced)]],
                merges: BTreeMap::new(),
            },
        }
    }

    /// Dimension of the bidegree-`(i, j)` strand (`j` is ignored for
    /// ungraded inputs).
    pub fn strand_dim(&self, i: usize, j: usize) -> usize {
        self.pieces.strand_dim(i, j)
    }

    /// `d`: strand `(i, j)` to strand `(i + 1, j)`.
    pub fn differential(&self, i: usize, j: usize) -> Matrix {
        self.pieces.cobar_map(i, j)
    }

    /// Homological degrees `0..=i_max` of the internal-degree-`j` strand.
    pub fn complex(&self, j: usize, i_max: usize) -> Result<FiniteComplex> {
        let spaces = (0..=i_max).map(|i| self.strand_dim(i, j)).collect();
        let maps = (0..i_max).map(|i| self.differential(i, j)).collect();
        FiniteComplex::new(self.pieces.field, Orientation::Cochain, spaces, maps)
    }
}

/// The reduced bar complex `F_l <- A_+ <- A_+ ⊗ A_+ <- …`, strand by strand.
#[derive(Debug, Clone)]
pub struct BarComplex {
    pieces: Pieces,
}

impl BarComplex {
    pub fn from_graded(a: &GradedSliceAlgebra) -> Self {
        let n_max = a.n_max();
        let mut merges = BTreeMap::new();
        for i in 1..=n_max {
            for j in 1..=n_max - i {
                merges.insert((i - 1, j - 1), (i + j - 1, a.mult(i, j).clone()));
            }
        }
        Self {
            pieces: Pieces {
                field: a.field(),
                dims: a.dims()[1..].to_vec(),
                graded: true,
                splits: Vec::new(),
                merges,
            },
        }
    }

    pub fn from_augmented(a: &AugmentedAlgebraData) -> Self {
        let ideal = a.ideal();
        let mut merges = BTreeMap::new();
        let k = ideal.inclusion.len();
        merges.insert((0, 0), (0, ideal.merge));
        Self {
            pieces: Pieces {
                field: a.field(),
                dims: vec![k],
                graded: false,
                splits: Vec::new(),
                merges,
            },
        }
    }

    pub fn strand_dim(&self, i: usize, j: usize) -> usize {
        self.pieces.strand_dim(i, j)
    }

    /// `∂`: strand `(i, j)` to strand `(i - 1, j)`, for `i ≥ 1`.
    pub fn differential(&self, i: usize, j: usize) -> Matrix {
        self.pieces.bar_map(i, j)
    }

    pub fn complex(&self, j: usize, i_max: usize) -> Result<FiniteComplex> {
        let spaces = (0..=i_max).map(|i| self.strand_dim(i, j)).collect();
        let maps = (1..=i_max).map(|i| self.differential(i, j)).collect();
        FiniteComplex::new(self.pieces.field, Orientation::Chain, spaces, maps)
    }
}

/// Cobar complex of an augmented coalgebra in homological degrees
/// `0..=i_max`.
pub fn cobar_complex(c: &AugmentedCoalgebraData, i_max: usize) -> Result<FiniteComplex> {
    CobarComplex::from_augmented(c).complex(0, i_max)
}

/// Internal-degree-`j` strand of the cobar complex of a graded slice.
pub fn graded_cobar_complex(c: &GradedSliceCoalgebra, j: usize) -> Result<FiniteComplex> {
    check_coverage(j, c.n_max())?;
    CobarComplex::from_graded(c).complex(j, j)
}

pub fn bar_complex(a: &AugmentedAlgebraData, i_max: usize) -> Result<FiniteComplex> {
    BarComplex::from_augmented(a).complex(0, i_max)
}

pub fn graded_bar_complex(a: &GradedSliceAlgebra, j: usize) -> Result<FiniteComplex> {
    check_coverage(j, a.n_max())?;
    BarComplex::from_graded(a).complex(j, j)
}

fn check_coverage(requested: usize, available: usize) -> Result<()> {
    if requested > available {
        return Err(Error::DegreeTooLarge {
            requested,
            available,
        });
    }
    Ok(())
}

/// `H^i` of an augmented coalgebra for `i ≤ i_max`.
pub fn coalgebra_cohomology(c: &AugmentedCoalgebraData, i_max: usize) -> Result<Vec<usize>> {
    let cx = cobar_complex(c, i_max + 1)?;
    (0..=i_max).map(|i| cx.homology_dim(i)).collect()
}

/// `H_i` of an augmented algebra for `i ≤ i_max`.
pub fn algebra_homology(a: &AugmentedAlgebraData, i_max: usize) -> Result<Vec<usize>> {
    let cx = bar_complex(a, i_max + 1)?;
    (0..=i_max).map(|i| cx.homology_dim(i)).collect()
}

/// Dimensions of `H_{ij}` or `H^{ij}` for `0 ≤ i ≤ j ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedTable {
    pub n_max: usize,
    entries: BTreeMap<(usize, usize), usize>,
    bases: BTreeMap<(usize, usize), Vec<Vec<u32>>>,
}

impl BigradedTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.entries
    }

    /// Cocycle (cycle) representatives, when the table was computed with
    /// bases retained.
    pub fn basis(&self, i: usize, j: usize) -> Option<&[Vec<u32>]> {
        self.bases.get(&(i, j)).map(Vec::as_slice)
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..=self.n_max).map(|i| self.get(i, i)).collect()
    }

    /// Nonzero entries with `i < j`, as `(i, j, dim)`.
    pub fn off_diagonal_nonzero(&self) -> Vec<(usize, usize, usize)> {
        self.entries
            .iter()
            .filter(|(&(i, j), &d)| i < j && d > 0)
            .map(|(&(i, j), &d)| (i, j, d))
            .collect()
    }
}

fn table_from_columns<F>(n_max: usize, keep_bases: bool, mut column: F) -> Result<BigradedTable>
where
    F: FnMut(usize) -> Result<FiniteComplex>,
{
    let mut entries = BTreeMap::new();
    let mut bases = BTreeMap::new();
    for j in 0..=n_max {
        let cx = column(j)?;
        for i in 0..=j {
            if keep_bases {
                let sq = cx.homology_basis(i)?;
                entries.insert((i, j), sq.dim());
                bases.insert((i, j), sq.representatives());
            } else {
                entries.insert((i, j), cx.homology_dim(i)?);
            }
        }
    }
    Ok(BigradedTable {
        n_max,
        entries,
        bases,
    })
}

/// `H_{ij}(A)` through internal degree `n_max`.
pub fn homology_table(a: &GradedSliceAlgebra, n_max: usize) -> Result<BigradedTable> {
    homology_table_with(a, n_max, false)
}

pub fn homology_table_with(a: &GradedSliceAlgebra, n_max: usize, keep_bases: bool) -> Result<BigradedTable> {
    check_coverage(n_max, a.n_max())?;
    let bar = BarComplex::from_graded(a);
    table_from_columns(n_max, keep_bases, |j| bar.complex(j, j))
}

/// `H^{ij}(C)` through internal degree `n_max`.
pub fn cohomology_table(c: &GradedSliceCoalgebra, n_max: usize) -> Result<BigradedTable> {
    cohomology_table_with(c, n_max, false)
}

pub fn cohomology_table_with(c: &GradedSliceCoalgebra, n_max: usize, keep_bases: bool) -> Result<BigradedTable> {
    check_coverage(n_max, c.n_max())?;
    let cobar = CobarComplex::from_graded(c);
    table_from_columns(n_max, keep_bases, |j| cobar.complex(j, j))
}

/// `H^{i,j}` (or `H_{i,j}`) for `i ≤ rows` and `rows < j ≤ n_max`, reading
/// only the strands `i ≤ rows + 1`.
fn low_rows<F>(n_max: usize, rows: usize, mut column: F) -> Result<BTreeMap<(usize, usize), usize>>
where
    F: FnMut(usize, usize) -> Result<FiniteComplex>,
{
    let mut out = BTreeMap::new();
    for j in 0..=n_max {
        let top = j.min(rows + 1);
        let cx = column(j, top)?;
        for i in 0..=j.min(rows) {
            out.insert((i, j), cx.homology_dim(i)?);
        }
    }
    Ok(out)
}

/// One-cogenerated through `n_max` iff `H^{1,j} = 0` for `1 < j ≤ n_max`.
pub fn one_cogenerated_verdict(c: &GradedSliceCoalgebra, n_max: usize) -> Result<bool> {
    check_coverage(n_max, c.n_max())?;
    let cobar = CobarComplex::from_graded(c);
    let rows = low_rows(n_max, 1, |j, top| cobar.complex(j, top))?;
    Ok((2..=n_max).all(|j| rows[&(1, j)] == 0))
}

/// One-generated through `n_max` iff `H_{1,j} = 0` for `1 < j ≤ n_max`.
pub fn one_generated_verdict(a: &GradedSliceAlgebra, n_max: usize) -> Result<bool> {
    check_coverage(n_max, a.n_max())?;
    let bar = BarComplex::from_graded(a);
    let rows = low_rows(n_max, 1, |j, top| bar.complex(j, top))?;
    Ok((2..=n_max).all(|j| rows[&(1, j)] == 0))
}

/// Per-degree quadraticity data, computed twice: from the comparison map
/// with the quadratic part and from the second row of the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticDegree {
    pub degree: usize,
    /// The comparison map is an isomorphism in every degree `≤ degree`.
    pub comparison_iso: bool,
    /// `H^{2,j} = 0` (resp. `H_{2,j} = 0`) for `2 < j ≤ degree`.
    pub second_row_vanishes: bool,
    /// Dimension of `H^{2,degree}` (resp. `H_{2,degree}`).
    pub second_row_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticReport {
    /// One-generated (algebra) or one-cogenerated (coalgebra) through `n_max`.
    pub one_generated: bool,
    pub degrees: Vec<QuadraticDegree>,
}

impl QuadraticReport {
    /// Quadratic through every reported degree.
    pub fn is_quadratic(&self) -> bool {
        self.degrees.iter().all(|d| d.comparison_iso)
    }

    /// Smallest degree where the comparison map stops being an isomorphism.
    pub fn first_failure(&self) -> Option<usize> {
        self.degrees.iter().find(|d| !d.comparison_iso).map(|d| d.degree)
    }

    /// Both computations agree in every degree. The equivalence needs
    /// generation in degree one, so other inputs are reported as consistent
    /// vacuously.
    pub fn consistent(&self) -> bool {
        !self.one_generated
            || self
                .degrees
                .iter()
                .all(|d| d.comparison_iso == d.second_row_vanishes)
    }
}

fn quadratic_report(
    one_generated: bool,
    comparisons: &[crate::quadratic::Comparison],
    rows: &BTreeMap<(usize, usize), usize>,
    n_max: usize,
) -> QuadraticReport {
    let degrees = (2..=n_max)
        .map(|n| QuadraticDegree {
            degree: n,
            comparison_iso: comparisons[..=n].iter().all(|c| c.bijective()),
            second_row_vanishes: (3..=n).all(|j| rows[&(2, j)] == 0),
            second_row_dim: rows[&(2, n)],
        })
        .collect();
    QuadraticReport {
        one_generated,
        degrees,
    }
}

pub fn quadratic_verdict_coalgebra(c: &GradedSliceCoalgebra, n_max: usize) -> Result<QuadraticReport> {
    check_coverage(n_max, c.n_max())?;
    let c = c.truncate(n_max)?;
    let q = quadratic_part_of_coalgebra(&c)?;
    let cobar = CobarComplex::from_graded(&c);
    let rows = low_rows(n_max, 2, |j, top| cobar.complex(j, top))?;
    let one = (2..=n_max).all(|j| rows[&(1, j)] == 0);
    Ok(quadratic_report(one, &q.comparisons, &rows, n_max))
}

pub fn quadratic_verdict_algebra(a: &GradedSliceAlgebra, n_max: usize) -> Result<QuadraticReport> {
    check_coverage(n_max, a.n_max())?;
    let a = a.truncate(n_max)?;
    let q = quadratic_part_of_algebra(&a)?;
    let bar = BarComplex::from_graded(&a);
    let rows = low_rows(n_max, 2, |j, top| bar.complex(j, top))?;
    let one = (2..=n_max).all(|j| rows[&(1, j)] == 0);
    Ok(quadratic_report(one, &q.comparisons, &rows, n_max))
}

/// The algebra `⊕_i H^{i,i}(C)` with the product induced by concatenation
/// of cobar cochains.
pub fn diagonal_algebra(c: &GradedSliceCoalgebra, n_max: usize) -> Result<GradedSliceAlgebra> {
    check_coverage(n_max, c.n_max())?;
    let f = c.field();
    let cobar = CobarComplex::from_graded(c);
    let mut classes = Vec::with_capacity(n_max + 1);
    for i in 0..=n_max {
        let ambient = cobar.strand_dim(i, i);
        let boundaries = if i >= 2 {
            cobar.differential(i - 1, i).image()
        } else {
            Subspace::zero(f, ambient)
        };
        classes.push(Subquotient::new(&Subspace::full(f, ambient), &boundaries)?);
    }
    let dims: Vec<usize> = classes.iter().map(Subquotient::dim).collect();
    let mut mult = BTreeMap::new();
    for i in 1..=n_max {
        for j in 1..=n_max - i {
            let mut m = Matrix::zeros(f, dims[i + j], dims[i] * dims[j]);
            for a in 0..dims[i] {
                for b in 0..dims[j] {
                    let x = Matrix::from_columns(f, classes[i].ambient_dim(), &[classes[i].representative(a).to_vec()]);
                    let y = Matrix::from_columns(f, classes[j].ambient_dim(), &[classes[j].representative(b).to_vec()]);
                    let xy = x.kron(&y).column(0);
                    for (r, v) in classes[i + j].class_of(&xy)?.into_iter().enumerate() {
                        if v != 0 {
                            m.set(r, a * dims[j] + b, v);
                        }
                    }
                }
            }
            mult.insert((i, j), m);
        }
    }
    GradedSliceAlgebra::new(f, dims, mult)
}

/// `H^*(C)` of an augmented coalgebra through degree `i_max`, with cocycle
/// representatives and the concatenation product.
#[derive(Debug, Clone)]
pub struct CohomologyRing {
    field: PrimeField,
    classes: Vec<Subquotient>,
}

impl CohomologyRing {
    pub fn new(c: &AugmentedCoalgebraData, i_max: usize) -> Result<Self> {
        let cx = cobar_complex(c, i_max + 1)?;
        let classes = (0..=i_max)
            .map(|i| cx.homology_basis(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            field: c.field(),
            classes,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn i_max(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.classes.iter().map(Subquotient::dim).collect()
    }

    pub fn dim(&self, i: usize) -> usize {
        self.classes[i].dim()
    }

    pub fn classes(&self, i: usize) -> &Subquotient {
        &self.classes[i]
    }

    /// Product of classes given in coordinates.
    pub fn product(&self, i: usize, x: &[u32], j: usize, y: &[u32]) -> Result<Vec<u32>> {
        if i + j > self.i_max() {
            return Err(Error::DegreeTooLarge {
                requested: i + j,
                available: self.i_max(),
            });
        }
        let f = self.field;
        let lift = |k: usize, coords: &[u32]| {
            let sq = &self.classes[k];
            let mut v = vec![0u32; sq.ambient_dim()];
            for (b, &c) in coords.iter().enumerate() {
                if c != 0 {
                    for (slot, &r) in v.iter_mut().zip(sq.representative(b)) {
                        *slot = f.add(*slot, f.mul(c, r));
                    }
                }
            }
            v
        };
        let (u, w) = (lift(i, x), lift(j, y));
        let mut uw = vec![0u32; u.len() * w.len()];
        for (a, &ua) in u.iter().enumerate() {
            if ua != 0 {
                for (b, &wb) in w.iter().enumerate() {
                    uw[a * w.len() + b] = f.mul(ua, wb);
                }
            }
        }
        self.classes[i + j].class_of(&uw)
    }

    /// `H^i ⊗ H^j -> H^{i+j}`.
    pub fn product_map(&self, i: usize, j: usize) -> Result<Matrix> {
        let (di, dj) = (self.dim(i), self.dim(j));
        let mut m = Matrix::zeros(self.field, self.dim(i + j), di * dj);
        for a in 0..di {
            for b in 0..dj {
                let mut x = vec![0u32; di];
                x[a] = 1;
                let mut y = vec![0u32; dj];
                y[b] = 1;
                for (r, v) in self.product(i, &x, j, &y)?.into_iter().enumerate() {
                    if v != 0 {
                        m.set(r, a * dj + b, v);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Image of `(H^1)^{⊗n}` in `H^n` as a subspace.
    pub fn generated_by_degree_one(&self, n: usize) -> Result<Subspace> {
        let f = self.field;
        if n == 0 {
            return Ok(Subspace::full(f, self.dim(0)));
        }
        let mut current = Subspace::full(f, self.dim(1));
        for k in 2..=n {
            let m = self.product_map(k - 1, 1)?;
            let spanning: Vec<Vec<u32>> = current
                .vectors()
                .iter()
                .flat_map(|x| {
                    (0..self.dim(1)).map(move |b| {
                        let mut col = vec![0u32; x.len() * self.dim(1)];
                        for (a, &xa) in x.iter().enumerate() {
                            col[a * self.dim(1) + b] = xa;
                        }
                        col
                    })
                })
                .map(|v| m.apply(&v))
                .collect();
            current = Subspace::span(f, self.dim(k), &spanning);
        }
        Ok(current)
    }
}

/// Outcome of checking `h∘d + d∘h = id` on the resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    /// `d∘d = 0` on every checked term of the resolution.
    pub differential_squares_to_zero: bool,
    /// The homotopy identity holds on every checked basis vector.
    pub holds: bool,
    pub checked: usize,
    /// First failing basis vector as a tuple of basis indices.
    pub violation: Option<Vec<usize>>,
}

type Chain = BTreeMap<Vec<usize>, u32>;

fn bump(f: PrimeField, ch: &mut Chain, key: Vec<usize>, v: u32) {
    if v == 0 {
        return;
    }
    let slot = ch.entry(key).or_insert(0);
    *slot = f.add(*slot, v);
}

fn cleaned(mut ch: Chain) -> Chain {
    ch.retain(|_, v| *v != 0);
    ch
}

fn add_chains(f: PrimeField, a: &Chain, b: &Chain) -> Chain {
    let mut out = a.clone();
    for (k, &v) in b {
        bump(f, &mut out, k.clone(), v);
    }
    cleaned(out)
}

fn all_keys(first: usize, rest: usize, n: usize) -> Vec<Vec<usize>> {
    let total = first * tensor::power(rest, n);
    let mut dims = vec![first];
    dims.extend(std::iter::repeat_n(rest, n));
    (0..total)
        .map(|mut idx| {
            let mut key = vec![0; n + 1];
            for (slot, &d) in key.iter_mut().zip(&dims).rev() {
                *slot = idx % d;
                idx /= d;
            }
            key
        })
        .collect()
}

/// The cobar resolution `F_l -> C -> C ⊗ C^+ -> …` with the splitting
/// `σ(πc) = c - ε(c)γ(1)`. The differential used is `Σ_{i=0}^n (-1)^i`
/// times the `i`-th coproduct term, so that `h∘d + d∘h = id`.
struct CobarResolution {
    f: PrimeField,
    coproducts: Vec<Vec<(usize, usize, u32)>>,
    quotient: Vec<SparseVec>,
    section: Vec<SparseVec>,
    reduced: Vec<Vec<(usize, usize, u32)>>,
    counit: Vec<u32>,
    unit: SparseVec,
}

impl CobarResolution {
    fn new(c: &AugmentedCoalgebraData) -> Self {
        let ck = c.cokernel();
        let k = ck.quotient.rows();
        Self {
            f: c.field(),
            coproducts: c.coproducts.clone(),
            quotient: (0..c.dim()).map(|x| sparse(&ck.quotient.column(x))).collect(),
            section: (0..k).map(|x| sparse(&ck.section.column(x))).collect(),
            reduced: (0..k)
                .map(|x| {
                    sparse(&ck.reduced.column(x))
                        .into_iter()
                        .map(|(idx, v)| (idx / k, idx % k, v))
                        .collect()
                })
                .collect(),
            counit: c.counit().to_vec(),
            unit: sparse(c.coaugmentation()),
        }
    }

    fn d(&self, x: &Chain) -> Chain {
        let f = self.f;
        let mut out = Chain::new();
        for (key, &v) in x {
            if key.is_empty() {
                for &(a, g) in &self.unit {
                    bump(f, &mut out, vec![a], f.mul(v, g));
                }
                continue;
            }
            for &(a, b, w) in &self.coproducts[key[0]] {
                for &(q, u) in &self.quotient[b] {
                    let mut nk = vec![a, q];
                    nk.extend_from_slice(&key[1..]);
                    bump(f, &mut out, nk, f.mul(v, f.mul(w, u)));
                }
            }
            for i in 1..key.len() {
                let sign = f.mul(v, f.sign(i));
                for &(s, t, w) in &self.reduced[key[i]] {
                    let mut nk = key[..i].to_vec();
                    nk.extend([s, t]);
                    nk.extend_from_slice(&key[i + 1..]);
                    bump(f, &mut out, nk, f.mul(sign, w));
                }
            }
        }
        cleaned(out)
    }

    fn h(&self, x: &Chain) -> Chain {
        let f = self.f;
        let mut out = Chain::new();
        for (key, &v) in x {
            let e = self.counit[key[0]];
            if e == 0 {
                continue;
            }
            let ve = f.mul(v, e);
            if key.len() == 1 {
                bump(f, &mut out, Vec::new(), ve);
                continue;
            }
            for &(a, w) in &self.section[key[1]] {
                let mut nk = vec![a];
                nk.extend_from_slice(&key[2..]);
                bump(f, &mut out, nk, f.mul(ve, w));
            }
        }
        cleaned(out)
    }
}

/// Checks the contracting homotopy of the cobar resolution on every basis
/// vector of `C ⊗ (C^+)^{⊗n}` for `n ≤ n_max`.
pub fn cobar_homotopy_check(c: &AugmentedCoalgebraData, n_max: usize) -> HomotopyReport {
    let r = CobarResolution::new(c);
    let plus = r.section.len();
    let mut squares = {
        let one: Chain = [(Vec::new(), 1)].into_iter().collect();
        r.d(&r.d(&one)).is_empty()
    };
    let mut checked = 0;
    for n in 0..=n_max {
        for key in all_keys(c.dim(), plus, n) {
            let x: Chain = [(key.clone(), 1)].into_iter().collect();
            let dx = r.d(&x);
            squares &= r.d(&dx).is_empty();
            let lhs = add_chains(r.f, &r.h(&dx), &r.d(&r.h(&x)));
            checked += 1;
            if lhs != x {
                return HomotopyReport {
                    differential_squares_to_zero: squares,
                    holds: false,
                    checked,
                    violation: Some(key),
                };
            }
        }
    }
    HomotopyReport {
        differential_squares_to_zero: squares,
        holds: true,
        checked,
        violation: None,
    }
}

/// The bar resolution `F_l <- A <- A ⊗ A_+ <- …` with differential
/// `Σ_{i=1}^n (-1)^{i-1}` times the `i`-th merge and the homotopy
/// `a_0 ⊗ … ↦ 1 ⊗ (a_0 - a(a_0)) ⊗ …`.
struct BarResolution {
    f: PrimeField,
    products: Vec<Vec<SparseVec>>,
    inclusion: Vec<SparseVec>,
    projection: Vec<SparseVec>,
    augmentation: Vec<u32>,
    unit: SparseVec,
}

impl BarResolution {
    fn new(a: &AugmentedAlgebraData) -> Self {
        let ideal = a.ideal();
        Self {
            f: a.field(),
            products: a.products.clone(),
            inclusion: ideal.inclusion,
            projection: ideal.projection,
            augmentation: a.augmentation().to_vec(),
            unit: sparse(a.unit()),
        }
    }

    fn d(&self, x: &Chain) -> Chain {
        let f = self.f;
        let mut out = Chain::new();
        for (key, &v) in x {
            if key.is_empty() {
                continue;
            }
            if key.len() == 1 {
                bump(f, &mut out, Vec::new(), f.mul(v, self.augmentation[key[0]]));
                continue;
            }
            for &(c, w) in &self.inclusion[key[1]] {
                for &(r, u) in &self.products[key[0]][c] {
                    let mut nk = vec![r];
                    nk.extend_from_slice(&key[2..]);
                    bump(f, &mut out, nk, f.mul(v, f.mul(w, u)));
                }
            }
            for i in 2..key.len() {
                let sign = f.mul(v, f.sign(i - 1));
                for &(c1, w1) in &self.inclusion[key[i - 1]] {
                    for &(c2, w2) in &self.inclusion[key[i]] {
                        let cw = f.mul(sign, f.mul(w1, w2));
                        for &(r, u) in &self.products[c1][c2] {
                            for &(k, z) in &self.projection[r] {
                                let mut nk = key[..i - 1].to_vec();
                                nk.push(k);
                                nk.extend_from_slice(&key[i + 1..]);
                                bump(f, &mut out, nk, f.mul(cw, f.mul(u, z)));
                            }
                        }
                    }
                }
            }
        }
        cleaned(out)
    }

    fn h(&self, x: &Chain) -> Chain {
        let f = self.f;
        let mut out = Chain::new();
        for (key, &v) in x {
            for &(u, uv) in &self.unit {
                let vu = f.mul(v, uv);
                if key.is_empty() {
                    bump(f, &mut out, vec![u], vu);
                    continue;
                }
                for &(k, z) in &self.projection[key[0]] {
                    let mut nk = vec![u, k];
                    nk.extend_from_slice(&key[1..]);
                    bump(f, &mut out, nk, f.mul(vu, z));
                }
            }
        }
        cleaned(out)
    }
}

/// Checks the contracting homotopy of the bar resolution on every basis
/// vector of `A ⊗ A_+^{⊗n}` for `n ≤ n_max`.
pub fn bar_homotopy_check(a: &AugmentedAlgebraData, n_max: usize) -> HomotopyReport {
    let r = BarResolution::new(a);
    let plus = r.inclusion.len();
    let mut squares = true;
    let mut checked = 0;
    for n in 0..=n_max {
        for key in all_keys(a.dim(), plus, n) {
            let x: Chain = [(key.clone(), 1)].into_iter().collect();
            let dx = r.d(&x);
            squares &= r.d(&dx).is_empty();
            let lhs = add_chains(r.f, &r.h(&dx), &r.d(&r.h(&x)));
            checked += 1;
            if lhs != x {
                return HomotopyReport {
                    differential_squares_to_zero: squares,
                    holds: false,
                    checked,
                    violation: Some(key),
                };
            }
        }
    }
    HomotopyReport {
        differential_squares_to_zero: squares,
        holds: true,
        checked,
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::{build_algebra_slice, build_coalgebra_slice, QuadraticPresentation};

    fn f(l: u64) -> PrimeField {
        PrimeField::new(l).unwrap()
    }

    fn free(l: u64, d: usize) -> QuadraticPresentation {
        QuadraticPresentation::with_default_names(f(l), d, Subspace::zero(f(l), d * d)).unwrap()
    }

    fn sym2(l: u64) -> QuadraticPresentation {
        QuadraticPresentation::from_symbolic(f(l), &["x", "y"], &["x*y - y*x"]).unwrap()
    }

    /// `F_l[x]/x^2` as an ungraded augmented algebra with basis `1, x`.
    fn dual_numbers(l: u64) -> AugmentedAlgebraData {
        let fl = f(l);
        let mult = Matrix::from_rows(fl, 4, &[vec![1, 0, 0, 0], vec![0, 1, 1, 0]]).unwrap();
        AugmentedAlgebraData::new(fl, mult, vec![1, 0], vec![1, 0]).unwrap()
    }

    /// Functions on `Z/n` with the convolution coproduct.
    fn cyclic_functions(l: u64, n: usize) -> AugmentedCoalgebraData {
        let fl = f(l);
        let mut comult = Matrix::zeros(fl, n * n, n);
        for h in 0..n {
            for k in 0..n {
                comult.set(h * n + k, (h + k) % n, 1);
            }
        }
        let mut counit = vec![0; n];
        counit[0] = 1;
        AugmentedCoalgebraData::new(fl, comult, counit, vec![1; n]).unwrap()
    }

    #[test]
    fn free_coalgebra_cohomology_is_diagonal() {
        let c = build_coalgebra_slice(&free(3, 2), 4);
        let t = cohomology_table(&c, 4).unwrap();
        assert_eq!(t.diagonal(), vec![1, 2, 4, 8, 16]);
        assert!(t.off_diagonal_nonzero().is_empty());
    }

    #[test]
    fn trivial_coalgebra() {
        let fl = f(5);
        let c = AugmentedCoalgebraData::new(fl, Matrix::identity(fl, 1), vec![1], vec![1]).unwrap();
        assert_eq!(coalgebra_cohomology(&c, 3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn functions_on_z2() {
        let c = cyclic_functions(2, 2);
        assert_eq!(coalgebra_cohomology(&c, 4).unwrap(), vec![1; 5]);
    }

    #[test]
    fn polynomial_ring_homology() {
        let a = build_algebra_slice(&free(3, 1), 4);
        let t = homology_table(&a, 4).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(1, 1), 1);
        let nonzero: usize = t.entries().values().sum();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn dual_numbers_homology() {
        for l in [2, 3, 5] {
            let a = dual_numbers(l);
            assert_eq!(algebra_homology(&a, 4).unwrap(), vec![1; 5]);
            let p = QuadraticPresentation::from_symbolic(f(l), &["x"], &["x*x"]).unwrap();
            let t = homology_table(&build_algebra_slice(&p, 4), 4).unwrap();
            assert_eq!(t.diagonal(), vec![1; 5]);
            assert!(t.off_diagonal_nonzero().is_empty());
        }
    }

    #[test]
    fn cube_truncation_obstruction() {
        for l in [2, 3, 5] {
            let a = GradedSliceAlgebra::truncated_polynomial(f(l), 3, 4).unwrap();
            let t = homology_table(&a, 4).unwrap();
            assert_eq!(t.get(2, 3), 1);
            let v = quadratic_verdict_algebra(&a, 4).unwrap();
            assert_eq!(v.first_failure(), Some(3));
            assert!(v.consistent());
            assert!(v.one_generated);
        }
    }

    #[test]
    fn symmetric_algebra_tables() {
        let p = sym2(3);
        let t = homology_table(&build_algebra_slice(&p, 4), 4).unwrap();
        assert_eq!(t.diagonal(), vec![1, 2, 1, 0, 0]);
        assert!(t.off_diagonal_nonzero().is_empty());
        let free2 = homology_table(&build_algebra_slice(&free(2, 2), 4), 4).unwrap();
        assert_eq!(free2.get(1, 1), 2);
        assert_eq!(free2.entries().iter().filter(|(&(i, _), &d)| i >= 1 && d > 0).count(), 1);
        let full = QuadraticPresentation::with_default_names(f(2), 2, Subspace::full(f(2), 4)).unwrap();
        let t = homology_table(&build_algebra_slice(&full, 4), 4).unwrap();
        assert_eq!(t.diagonal(), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn complexes_are_complexes_at_odd_characteristic() {
        let p = QuadraticPresentation::from_symbolic(f(5), &["x", "y", "z"], &["x*y - y*x", "2*x*z + z*z"]).unwrap();
        let a = build_algebra_slice(&p, 4);
        let c = build_coalgebra_slice(&p, 4);
        for j in 0..=4 {
            graded_bar_complex(&a, j).unwrap();
            graded_cobar_complex(&c, j).unwrap();
        }
    }

    #[test]
    fn verdicts_for_quadratic_coalgebras() {
        let c = build_coalgebra_slice(&sym2(3), 4);
        assert!(one_cogenerated_verdict(&c, 4).unwrap());
        let v = quadratic_verdict_coalgebra(&c, 4).unwrap();
        assert!(v.is_quadratic() && v.consistent());
        let full = QuadraticPresentation::with_default_names(f(2), 2, Subspace::full(f(2), 4)).unwrap();
        let v = quadratic_verdict_coalgebra(&build_coalgebra_slice(&full, 4), 4).unwrap();
        assert!(v.is_quadratic());
    }

    #[test]
    fn diagonal_algebra_of_symmetric_dual() {
        let p = sym2(3);
        let d = diagonal_algebra(&build_coalgebra_slice(&p, 4), 4).unwrap();
        assert_eq!(d.dims(), &[1, 2, 3, 4, 5]);
        let q = quadratic_part_of_algebra(&d).unwrap();
        assert_eq!(q.presentation.relations(), p.relations());
        let d = diagonal_algebra(&build_coalgebra_slice(&free(2, 2), 3), 3).unwrap();
        assert_eq!(d.dims(), &[1, 2, 4, 8]);
    }

    #[test]
    fn homotopy_on_small_instances() {
        let r = bar_homotopy_check(&dual_numbers(2), 3);
        assert!(r.holds && r.differential_squares_to_zero);
        let r = cobar_homotopy_check(&cyclic_functions(3, 3), 3);
        assert!(r.holds && r.differential_squares_to_zero, "{r:?}");
        let r = bar_homotopy_check(&dual_numbers(5), 3);
        assert!(r.holds);
    }

    #[test]
    fn homotopy_on_graded_truncations() {
        let p = QuadraticPresentation::from_symbolic(f(3), &["x", "y"], &["x*y - y*x", "x*x"]).unwrap();
        let a = AugmentedAlgebraData::from_graded(&build_algebra_slice(&p, 3));
        assert!(bar_homotopy_check(&a, 2).holds);
        let c = AugmentedCoalgebraData::from_graded(&build_coalgebra_slice(&p, 3));
        assert!(cobar_homotopy_check(&c, 2).holds);
    }

    #[test]
    fn broken_augmentation_is_rejected() {
        let fl = f(2);
        let mult = Matrix::from_rows(fl, 4, &[vec![1, 0, 0, 0], vec![0, 1, 1, 0]]).unwrap();
        assert!(AugmentedAlgebraData::new(fl, mult, vec![1, 0], vec![1, 1]).is_err());
        let comult = Matrix::from_rows(fl, 2, &[vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]]).unwrap();
        assert!(AugmentedCoalgebraData::new(fl, comult, vec![1, 0], vec![0, 1]).is_err());
    }

    #[test]
    fn graded_and_ungraded_cohomology_agree() {
        let c = build_coalgebra_slice(&sym2(3), 4);
        let t = cohomology_table(&c, 4).unwrap();
        let u = AugmentedCoalgebraData::from_graded(&c);
        let h = coalgebra_cohomology(&u, 2).unwrap();
        // The ungraded slice has no grading bound, so only low degrees are
        // comparable: H^1 = C_1 and H^2 = R for a quadratic coalgebra
        // whose top degree vanishes.
        assert_eq!(h[1], t.get(1, 1));
        assert_eq!(h[2], t.get(2, 2));
    }

    #[test]
    fn cohomology_ring_of_z2() {
        let ring = CohomologyRing::new(&cyclic_functions(2, 2), 4).unwrap();
        assert_eq!(ring.dims(), vec![1; 5]);
        for n in 1..=4 {
            assert_eq!(ring.generated_by_degree_one(n).unwrap().dim(), 1);
        }
    }
}
