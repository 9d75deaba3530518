//! Dense exact linear algebra over a prime field `F_l`.
//!
//! Everything in the crate bottoms out here: subspaces are stored as
//! canonical reduced row-echelon bases, so two equal subspaces always have
//! bit-identical representations and equality is a plain `==`.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    l: u32,
}

impl PrimeField {
    pub fn new(l: u64) -> Result<Self> {
        if !is_prime(l) || l > u32::MAX as u64 {
            return Err(Error::NotPrime(l));
        }
        Ok(Self { l: l as u32 })
    }

    pub fn l(self) -> u32 {
        self.l
    }

    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.l as i64) as u32
    }

    pub fn check(self, v: u64) -> Result<u32> {
        if v >= self.l as u64 {
            Err(Error::EntryOutOfRange { value: v, l: self.l })
        } else {
            Ok(v as u32)
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.l as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + (self.l - b) as u64) % self.l as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.l - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.l as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.l;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.l), "inverse of zero in F_{}", self.l);
        self.pow(a, self.l as u64 - 2)
    }

    /// `(-1)^k` as a field element.
    pub fn sign(self, k: usize) -> u32 {
        if k.is_multiple_of(2) {
            1 % self.l
        } else {
            self.neg(1)
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.l)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over `F_l`. As a linear map it sends column
/// vectors of length `cols` (the domain) to vectors of length `rows`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// A linear map `F_l^cols -> F_l^rows`.
pub type LinearMap = Matrix;

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows, rejecting entries outside `[0, l)`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has length {}, expected {cols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = field.check(v)?;
            }
        }
        Ok(m)
    }

    /// Builds a matrix from already-reduced row vectors.
    pub fn from_reduced_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            m.data[r * cols..(r + 1) * cols].copy_from_slice(row);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v;
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain_dim(&self) -> usize {
        self.cols
    }

    pub fn codomain_dim(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.l;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: u32) {
        let idx = r * self.cols + c;
        self.data[idx] = self.field.add(self.data[idx], v);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// Composition `self ∘ other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let l = f.l as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            let acc = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % l;
                }
            }
        }
        Matrix {
            field: f,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|v| v as u32).collect(),
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let l = self.field.l as u64;
        (0..self.rows)
            .map(|r| {
                let s = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % l);
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    /// Kronecker product; the index of `(i, j)` is `i * other.dim + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Matrix::zeros(f, rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if b != 0 {
                            m.data[(r1 * other.rows + r2) * cols + c1 * other.cols + c2] =
                                f.mul(a, b);
                        }
                    }
                }
            }
        }
        m
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        echelonize(self.field, &mut data, self.rows, self.cols, false).len()
    }

    /// Canonical reduced row-echelon form with zero rows dropped, plus the
    /// pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut data = self.data.clone();
        let pivots = echelonize(self.field, &mut data, self.rows, self.cols, true);
        data.truncate(pivots.len() * self.cols);
        (
            Matrix {
                field: self.field,
                rows: pivots.len(),
                cols: self.cols,
                data,
            },
            pivots,
        )
    }

    pub fn kernel(&self) -> Subspace {
        kernel(self)
    }

    pub fn image(&self) -> Subspace {
        image(self)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let w = 2 * n;
        let mut data = vec![0u32; n * w];
        for r in 0..n {
            data[r * w..r * w + n].copy_from_slice(self.row(r));
            data[r * w + n + r] = 1;
        }
        let pivots = echelonize(self.field, &mut data, n, w, true);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            inv.data[r * n..(r + 1) * n].copy_from_slice(&data[r * w + n..(r + 1) * w]);
        }
        Some(inv)
    }
}

/// Gaussian elimination in place on a row-major buffer. Moves the nonzero
/// rows to the top; with `full` the result is fully reduced.
fn echelonize(f: PrimeField, data: &mut [u32], rows: usize, cols: usize, full: bool) -> Vec<usize> {
    let l = f.l;
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if sel != prow {
            for k in 0..cols {
                data.swap(sel * cols + k, prow * cols + k);
            }
        }
        let inv = f.inv(data[prow * cols + c]);
        if inv != 1 {
            for k in c..cols {
                let idx = prow * cols + k;
                data[idx] = f.mul(data[idx], inv);
            }
        }
        let (head, tail) = data.split_at_mut(prow * cols);
        let (pivot_row, below) = tail.split_at_mut(cols);
        let start = if full { 0 } else { prow };
        let eliminate = |row: &mut [u32]| {
            let factor = row[c];
            if factor == 0 {
                return;
            }
            if l == 2 {
                for k in c..cols {
                    row[k] ^= pivot_row[k];
                }
            } else {
                let neg = (l - factor) as u64;
                for k in c..cols {
                    let p = pivot_row[k];
                    if p != 0 {
                        row[k] = ((row[k] as u64 + neg * p as u64) % l as u64) as u32;
                    }
                }
            }
        };
        if start < prow {
            for r in start..prow {
                eliminate(&mut head[r * cols..(r + 1) * cols]);
            }
        }
        for r in 0..rows - prow - 1 {
            eliminate(&mut below[r * cols..(r + 1) * cols]);
        }
        pivots.push(c);
        prow += 1;
    }
    pivots
}

/// Canonical RREF of a matrix (zero rows dropped).
pub fn rref(m: &Matrix) -> Matrix {
    m.rref().0
}

/// A subspace of `F_l^ambient`, stored as its canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {}^{}: {:?})",
            self.dim(),
            self.basis.field,
            self.ambient_dim(),
            self.basis.row_vecs()
        )
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (basis, pivots) = m.rref();
        Self { basis, pivots }
    }

    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Self::row_space(&Matrix::from_reduced_rows(field, ambient, vectors))
    }

    /// Wraps a matrix already known to be in canonical RREF.
    pub(crate) fn from_rref_unchecked(basis: Matrix) -> Self {
        let pivots = (0..basis.rows())
            .map(|r| basis.row(r).iter().position(|&v| v != 0).expect("zero row"))
            .collect();
        let s = Self { basis, pivots };
        debug_assert_eq!(Subspace::row_space(&s.basis), s);
        s
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() || self.field() != other.field() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of {}^{} and {}^{}",
                self.field(),
                self.ambient_dim(),
                other.field(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Normal form of `v` modulo this subspace: the pivot coordinates are
    /// eliminated.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (slot, &b) in out.iter_mut().zip(self.basis.row(r)) {
                if b != 0 {
                    *slot = f.add(*slot, f.mul(neg, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the stored basis, or `None` when `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coordinates_unchecked(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Orthogonal complement under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        null_space(self.field(), &self.basis, &self.pivots)
    }

    /// `self ⊗ other` inside the Kronecker-ordered tensor product.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        Subspace::from_rref_unchecked(self.basis.kron(&other.basis))
    }

    /// Image of this subspace under `f`.
    pub fn map(&self, f: &Matrix) -> Subspace {
        image(&f.mul(&self.basis.transpose()))
    }

    /// `{ v | f(v) ∈ self }`.
    pub fn preimage(&self, f: &Matrix) -> Subspace {
        assert_eq!(f.rows(), self.ambient_dim());
        kernel(&self.annihilator().basis.mul(f))
    }

    /// Basis vectors as rows.
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    /// Complement basis: the standard unit vectors at non-pivot columns.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    /// The quotient map `F_l^ambient -> F_l^ambient / self` in the
    /// coordinates given by the free columns.
    pub fn quotient_map(&self) -> Matrix {
        let free = self.free_columns();
        let f = self.field();
        let mut index = vec![usize::MAX; self.ambient_dim()];
        for (i, &c) in free.iter().enumerate() {
            index[c] = i;
        }
        let mut q = Matrix::zeros(f, free.len(), self.ambient_dim());
        for (i, &c) in free.iter().enumerate() {
            q.set(i, c, 1);
        }
        for (r, &p) in self.pivots.iter().enumerate() {
            for (i, &c) in free.iter().enumerate() {
                let v = self.basis.get(r, c);
                if v != 0 {
                    q.set(i, p, f.neg(v));
                }
            }
        }
        q
    }
}

fn null_space(f: PrimeField, rref_rows: &Matrix, pivots: &[usize]) -> Subspace {
    let cols = rref_rows.cols();
    let mut is_pivot = vec![None; cols];
    for (r, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(r);
    }
    let mut vecs = Vec::new();
    for free in (0..cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(rref_rows.get(r, free));
        }
        vecs.push(v);
    }
    Subspace::span(f, cols, &vecs)
}

pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = m.rref();
    null_space(m.field(), &r, &pivots)
}

pub fn image(m: &Matrix) -> Subspace {
    Subspace::row_space(&m.transpose())
}

/// Which way the differentials of a [`FiniteComplex`] point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `maps[k]: spaces[k] -> spaces[k + 1]`
    Cochain,
    /// `maps[k]: spaces[k + 1] -> spaces[k]`
    Chain,
}

/// A bounded complex of finite-dimensional spaces. Construction rejects
/// shape mismatches and non-zero composites.
#[derive(Debug, Clone)]
pub struct FiniteComplex {
    field: PrimeField,
    orientation: Orientation,
    spaces: Vec<usize>,
    maps: Vec<Matrix>,
}

impl FiniteComplex {
    pub fn new(
        field: PrimeField,
        orientation: Orientation,
        spaces: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if maps.len() + 1 != spaces.len() && !(spaces.is_empty() && maps.is_empty()) {
            return Err(Error::DimensionMismatch(format!(
                "{} spaces need {} maps, got {}",
                spaces.len(),
                spaces.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            let (dom, cod) = match orientation {
                Orientation::Cochain => (spaces[k], spaces[k + 1]),
                Orientation::Chain => (spaces[k + 1], spaces[k]),
            };
            if m.cols() != dom || m.rows() != cod {
                return Err(Error::DimensionMismatch(format!(
                    "map {k} is {}x{}, expected {cod}x{dom}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for k in 0..maps.len().saturating_sub(1) {
            let composite = match orientation {
                Orientation::Cochain => maps[k + 1].mul(&maps[k]),
                Orientation::Chain => maps[k].mul(&maps[k + 1]),
            };
            if !composite.is_zero() {
                return Err(Error::NotAComplex(k + 1));
            }
        }
        Ok(Self {
            field,
            orientation,
            spaces,
            maps,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn spaces(&self) -> &[usize] {
        &self.spaces
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Map leaving `position`, if any.
    pub fn outgoing(&self, position: usize) -> Option<&Matrix> {
        match self.orientation {
            Orientation::Cochain => self.maps.get(position),
            Orientation::Chain => position.checked_sub(1).and_then(|k| self.maps.get(k)),
        }
    }

    /// Map arriving at `position`, if any.
    pub fn incoming(&self, position: usize) -> Option<&Matrix> {
        match self.orientation {
            Orientation::Cochain => position.checked_sub(1).and_then(|k| self.maps.get(k)),
            Orientation::Chain => self.maps.get(position),
        }
    }

    pub fn homology_dim(&self, position: usize) -> Result<usize> {
        let dim = *self.spaces.get(position).ok_or_else(|| {
            Error::IndexOutOfRange(format!("position {position} of {}", self.spaces.len()))
        })?;
        let out_rank = self.outgoing(position).map_or(0, Matrix::rank);
        let in_rank = self.incoming(position).map_or(0, Matrix::rank);
        Ok(dim - out_rank - in_rank)
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        (0..self.len())
            .map(|p| self.homology_dim(p).expect("position in range"))
            .collect()
    }

    /// Representatives of a basis of homology at `position`.
    pub fn homology_basis(&self, position: usize) -> Result<Subquotient> {
        let dim = *self.spaces.get(position).ok_or_else(|| {
            Error::IndexOutOfRange(format!("position {position} of {}", self.spaces.len()))
        })?;
        let cycles = match self.outgoing(position) {
            Some(m) => kernel(m),
            None => Subspace::full(self.field, dim),
        };
        let boundaries = match self.incoming(position) {
            Some(m) => image(m),
            None => Subspace::zero(self.field, dim),
        };
        Subquotient::new(&cycles, &boundaries)
    }

    /// True when the homology vanishes at every position not in `except`.
    pub fn is_exact_except(&self, except: &[usize]) -> bool {
        (0..self.len())
            .filter(|p| !except.contains(p))
            .all(|p| self.homology_dim(p).expect("position in range") == 0)
    }
}

/// A chosen basis of `Z / B` for subspaces `B ⊆ Z`, with representatives
/// that vanish on the pivot columns of `B`.
#[derive(Debug, Clone)]
pub struct Subquotient {
    boundaries: Subspace,
    reps: Subspace,
}

impl Subquotient {
    pub fn new(cycles: &Subspace, boundaries: &Subspace) -> Result<Self> {
        if !boundaries.is_subspace_of(cycles) {
            return Err(Error::Internal("boundaries not contained in cycles".into()));
        }
        let reduced: Vec<Vec<u32>> = cycles
            .vectors()
            .iter()
            .map(|v| boundaries.reduce(v))
            .collect();
        let reps = Subspace::span(cycles.field(), cycles.ambient_dim(), &reduced);
        Ok(Self {
            boundaries: boundaries.clone(),
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.reps.ambient_dim()
    }

    /// Cycle representatives of the basis classes.
    pub fn representatives(&self) -> Vec<Vec<u32>> {
        self.reps.vectors()
    }

    pub fn representative(&self, k: usize) -> &[u32] {
        self.reps.basis().row(k)
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    /// Class coordinates of a cycle.
    pub fn class_of(&self, v: &[u32]) -> Result<Vec<u32>> {
        let r = self.boundaries.reduce(v);
        self.reps
            .coordinates(&r)
            .ok_or_else(|| Error::Internal("vector is not a cycle".into()))
    }
}

/// Incrementally built echelon basis used for greedy independence scans.
#[derive(Debug, Clone)]
pub struct EchelonBuilder {
    field: PrimeField,
    dim: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonBuilder {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = v.to_vec();
        for (p, row) in &self.rows {
            let c = out[*p];
            if c != 0 {
                let neg = f.neg(c);
                for (slot, &b) in out.iter_mut().zip(row) {
                    if b != 0 {
                        *slot = f.add(*slot, f.mul(neg, b));
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v` when it is independent of what is already stored.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(r[p]);
        for x in r.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push((p, r));
        true
    }
}
