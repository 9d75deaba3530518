//! Truncated graded algebras and coalgebras: components in degrees
//! `0..=n_max` together with their (co)multiplication components.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Subspace};
use crate::tensor;

/// `T(V)` modulo a two-sided ideal, computed degree by degree through
/// normal forms: `A_n = (A_{n-1} ⊗ V) / K_n` where `K_n` is spanned by the
/// images of `V^{⊗(n-k)} ⊗ G_k` for the ideal generators `G_k` of degree `k`.
#[derive(Debug, Clone)]
pub struct TensorQuotient {
    field: PrimeField,
    gens: usize,
    components: Vec<QuotientComponent>,
}

/// One degree of a [`TensorQuotient`].
#[derive(Debug, Clone)]
pub struct QuotientComponent {
    /// Section: the tensor word representing each basis vector.
    pub words: Vec<Vec<usize>>,
    /// Projection `V^{⊗n} -> A_n`.
    pub projection: Matrix,
}

impl QuotientComponent {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

impl TensorQuotient {
    /// `generators[k]` lists ideal generators of degree `k` as coordinate
    /// vectors of `V^{⊗k}`.
    pub fn new(
        field: PrimeField,
        gens: usize,
        n_max: usize,
        generators: &BTreeMap<usize, Vec<Vec<u32>>>,
    ) -> Result<Self> {
        for (&k, vs) in generators {
            if k == 0 {
                return Err(Error::Precondition("ideal generators must have positive degree".into()));
            }
            for v in vs {
                if v.len() != tensor::power(gens, k) {
                    return Err(Error::DimensionMismatch(format!(
                        "degree-{k} generator has {} coordinates, expected {}",
                        v.len(),
                        tensor::power(gens, k)
                    )));
                }
            }
        }
        let mut components = vec![QuotientComponent {
            words: vec![Vec::new()],
            projection: Matrix::identity(field, 1),
        }];
        for n in 1..=n_max {
            let prev = &components[n - 1];
            let prev_dim = prev.dim();
            let ext_dim = prev_dim * gens;
            // Image of a word of length n in A_{n-1} ⊗ V.
            let push_down = |word_idx: usize, coeff: u32, out: &mut [u32]| {
                let head = word_idx / gens;
                let last = word_idx % gens;
                for a in 0..prev_dim {
                    let v = prev.projection.get(a, head);
                    if v != 0 {
                        let slot = a * gens + last;
                        out[slot] = field.add(out[slot], field.mul(v, coeff));
                    }
                }
            };
            let mut kernel_rows = Vec::new();
            for (&k, vs) in generators.range(..=n) {
                let prefixes = tensor::power(gens, n - k);
                let block = tensor::power(gens, k);
                for g in vs {
                    for u in 0..prefixes {
                        let mut row = vec![0u32; ext_dim];
                        for (w, &c) in g.iter().enumerate() {
                            if c != 0 {
                                push_down(u * block + w, c, &mut row);
                            }
                        }
                        if row.iter().any(|&x| x != 0) {
                            kernel_rows.push(row);
                        }
                    }
                }
            }
            let kernel = Subspace::span(field, ext_dim, &kernel_rows);
            let quotient = kernel.quotient_map();
            let words: Vec<Vec<usize>> = kernel
                .free_columns()
                .into_iter()
                .map(|c| {
                    let mut w = prev.words[c / gens].clone();
                    w.push(c % gens);
                    w
                })
                .collect();
            let total = tensor::power(gens, n);
            let mut projection = Matrix::zeros(field, words.len(), total);
            let mut scratch = vec![0u32; ext_dim];
            for idx in 0..total {
                scratch.iter_mut().for_each(|x| *x = 0);
                push_down(idx, 1, &mut scratch);
                let col = quotient.apply(&scratch);
                for (r, v) in col.into_iter().enumerate() {
                    if v != 0 {
                        projection.set(r, idx, v);
                    }
                }
            }
            components.push(QuotientComponent { words, projection });
        }
        Ok(Self {
            field,
            gens,
            components,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn n_max(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, n: usize) -> &QuotientComponent {
        &self.components[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(QuotientComponent::dim).collect()
    }

    /// Multiplication components `A_i ⊗ A_j -> A_{i+j}` (concatenate the
    /// section words, then project).
    pub fn multiplication(&self) -> BTreeMap<(usize, usize), Matrix> {
        let mut mult = BTreeMap::new();
        let n_max = self.n_max();
        for i in 1..=n_max {
            for j in 1..=n_max - i {
                let (ci, cj, ck) = (&self.components[i], &self.components[j], &self.components[i + j]);
                let mut m = Matrix::zeros(self.field, ck.dim(), ci.dim() * cj.dim());
                for (a, wa) in ci.words.iter().enumerate() {
                    for (b, wb) in cj.words.iter().enumerate() {
                        let mut w = wa.clone();
                        w.extend_from_slice(wb);
                        let idx = tensor::word_index(&w, self.gens);
                        for r in 0..ck.dim() {
                            let v = ck.projection.get(r, idx);
                            if v != 0 {
                                m.set(r, a * cj.dim() + b, v);
                            }
                        }
                    }
                }
                mult.insert((i, j), m);
            }
        }
        mult
    }
}

fn default_names(d: usize) -> Vec<String> {
    (1..=d).map(|k| format!("v{k}")).collect()
}

/// A graded algebra known in degrees `0..=n_max`. `A_0` is the ground
/// field and the unit is implicit; `mult[(i, j)]` for `i, j ≥ 1` maps
/// `A_i ⊗ A_j -> A_{i+j}`.
#[derive(Debug, Clone)]
pub struct GradedSliceAlgebra {
    field: PrimeField,
    dims: Vec<usize>,
    mult: BTreeMap<(usize, usize), Matrix>,
    names: Vec<String>,
    model: Option<Arc<TensorQuotient>>,
}

impl GradedSliceAlgebra {
    /// Validates shapes and associativity on every composable triple.
    pub fn new(
        field: PrimeField,
        dims: Vec<usize>,
        mult: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self> {
        let names = default_names(dims.get(1).copied().unwrap_or(0));
        let a = Self {
            field,
            dims,
            mult,
            names,
            model: None,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn from_tensor_quotient(q: TensorQuotient, names: Option<Vec<String>>) -> Result<Self> {
        let names = names.unwrap_or_else(|| default_names(q.generators()));
        if names.len() != q.generators() {
            return Err(Error::DimensionMismatch("generator names".into()));
        }
        let mut a = Self::new(q.field(), q.dims(), q.multiplication())?;
        a.names = names;
        a.model = Some(Arc::new(q));
        Ok(a)
    }

    /// `F_l[x]/(x^k)` truncated at `n_max`.
    pub fn truncated_polynomial(field: PrimeField, k: usize, n_max: usize) -> Result<Self> {
        let mut gens = BTreeMap::new();
        gens.insert(k, vec![vec![1u32]]);
        Self::from_tensor_quotient(TensorQuotient::new(field, 1, n_max, &gens)?, Some(vec!["x".into()]))
    }

    fn validate(&self) -> Result<()> {
        let n_max = self.n_max();
        if self.dims.first() != Some(&1) {
            return Err(Error::InvalidStructure("A_0 must be one-dimensional".into()));
        }
        for i in 1..=n_max {
            for j in 1..=n_max - i {
                let m = self.mult.get(&(i, j)).ok_or_else(|| {
                    Error::InvalidStructure(format!("missing multiplication component ({i},{j})"))
                })?;
                if m.rows() != self.dims[i + j] || m.cols() != self.dims[i] * self.dims[j] {
                    return Err(Error::DimensionMismatch(format!(
                        "multiplication ({i},{j}) has shape {}x{}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        for i in 1..=n_max {
            for j in 1..=n_max - i {
                for k in 1..=n_max - i - j {
                    let id_i = Matrix::identity(self.field, self.dims[i]);
                    let id_k = Matrix::identity(self.field, self.dims[k]);
                    let left = self.mult[&(i + j, k)].mul(&self.mult[&(i, j)].kron(&id_k));
                    let right = self.mult[&(i, j + k)].mul(&id_i.kron(&self.mult[&(j, k)]));
                    if left != right {
                        return Err(Error::InvalidStructure(format!(
                            "multiplication is not associative on degrees ({i},{j},{k})"
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

    pub fn n_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn set_generator_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.dim(1.min(self.n_max())) && self.n_max() >= 1 {
            return Err(Error::DimensionMismatch("generator names".into()));
        }
        self.names = names;
        Ok(())
    }

    pub fn tensor_model(&self) -> Option<&TensorQuotient> {
        self.model.as_deref()
    }

    /// `A_i ⊗ A_j -> A_{i+j}` for `i, j ≥ 1`.
    pub fn mult(&self, i: usize, j: usize) -> &Matrix {
        &self.mult[&(i, j)]
    }

    /// Product of homogeneous elements (units handled).
    pub fn multiply(&self, i: usize, x: &[u32], j: usize, y: &[u32]) -> Vec<u32> {
        if i == 0 {
            return y.iter().map(|&v| self.field.mul(v, x[0])).collect();
        }
        if j == 0 {
            return x.iter().map(|&v| self.field.mul(v, y[0])).collect();
        }
        let mut xy = vec![0u32; x.len() * y.len()];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                xy[a * y.len() + b] = self.field.mul(xa, yb);
            }
        }
        self.mult(i, j).apply(&xy)
    }

    /// Image of a product of degree-one basis vectors.
    pub fn word_product(&self, word: &[usize]) -> Vec<u32> {
        let mut acc = vec![1u32];
        for (k, &g) in word.iter().enumerate() {
            let mut e = vec![0u32; self.dims[1]];
            e[g] = 1;
            acc = self.multiply(k, &acc, 1, &e);
        }
        acc
    }

    /// Iterated multiplication `A_1^{⊗n} -> A_n`.
    pub fn iterated_multiplication(&self, n: usize) -> Matrix {
        let d = self.dims.get(1).copied().unwrap_or(0);
        let mut acc = Matrix::identity(self.field, 1);
        for k in 1..=n {
            if k == 1 {
                acc = Matrix::identity(self.field, d);
            } else {
                acc = self.mult(k - 1, 1).mul(&acc.kron(&Matrix::identity(self.field, d)));
            }
        }
        acc
    }

    pub fn truncate(&self, n_max: usize) -> Result<Self> {
        if n_max > self.n_max() {
            return Err(Error::DegreeTooLarge {
                requested: n_max,
                available: self.n_max(),
            });
        }
        Ok(Self {
            field: self.field,
            dims: self.dims[..=n_max].to_vec(),
            mult: self
                .mult
                .iter()
                .filter(|((i, j), _)| i + j <= n_max)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            names: self.names.clone(),
            model: self.model.clone(),
        })
    }

    /// Offset of degree `n` in the flattened basis `A_0 ⊕ … ⊕ A_{n_max}`.
    pub fn offset(&self, n: usize) -> usize {
        self.dims[..n].iter().sum()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// A graded coalgebra known in degrees `0..=n_max`; `comult[(i, j)]` for
/// `i, j ≥ 1` maps `C_{i+j} -> C_i ⊗ C_j`. The counit and the degree-zero
/// components of `Δ` are implicit.
#[derive(Debug, Clone)]
pub struct GradedSliceCoalgebra {
    field: PrimeField,
    dims: Vec<usize>,
    comult: BTreeMap<(usize, usize), Matrix>,
    embedding: Option<Vec<Subspace>>,
}

impl GradedSliceCoalgebra {
    pub fn new(
        field: PrimeField,
        dims: Vec<usize>,
        comult: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self> {
        let c = Self {
            field,
            dims,
            comult,
            embedding: None,
        };
        c.validate()?;
        Ok(c)
    }

    /// A graded subcoalgebra of the tensor coalgebra on `F_l^gens` given by
    /// its components; closure under deconcatenation is checked.
    pub fn from_tensor_subspaces(field: PrimeField, gens: usize, components: Vec<Subspace>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidStructure("no components".into()));
        }
        for (n, c) in components.iter().enumerate() {
            if c.ambient_dim() != tensor::power(gens, n) {
                return Err(Error::DimensionMismatch(format!(
                    "component {n} lives in dimension {}, expected {}",
                    c.ambient_dim(),
                    tensor::power(gens, n)
                )));
            }
        }
        if components[0].dim() != 1 {
            return Err(Error::InvalidStructure("C_0 must be the ground field".into()));
        }
        let n_max = components.len() - 1;
        let mut comult = BTreeMap::new();
        for n in 2..=n_max {
            let cn = &components[n];
            for i in 1..n {
                let j = n - i;
                let (ci, cj) = (&components[i], &components[j]);
                let right = tensor::power(gens, j);
                let mut m = Matrix::zeros(field, ci.dim() * cj.dim(), cn.dim());
                for (col, v) in cn.vectors().iter().enumerate() {
                    for s in 0..ci.dim() {
                        for t in 0..cj.dim() {
                            let x = v[ci.pivots()[s] * right + cj.pivots()[t]];
                            if x != 0 {
                                m.set(s * cj.dim() + t, col, x);
                            }
                        }
                    }
                    // the deconcatenated vector must equal Σ X[s][t] c_s ⊗ c_t
                    let rebuilt = ci.basis().transpose().kron(&cj.basis().transpose()).apply(&m.column(col));
                    if &rebuilt != v {
                        return Err(Error::InvalidStructure(format!(
                            "component {n} is not closed under Δ_({i},{j})"
                        )));
                    }
                }
                comult.insert((i, j), m);
            }
        }
        let mut c = Self::new(field, components.iter().map(Subspace::dim).collect(), comult)?;
        c.embedding = Some(components);
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        let n_max = self.n_max();
        if self.dims.first() != Some(&1) {
            return Err(Error::InvalidStructure("C_0 must be one-dimensional".into()));
        }
        for i in 1..=n_max {
            for j in 1..=n_max - i {
                let m = self.comult.get(&(i, j)).ok_or_else(|| {
                    Error::InvalidStructure(format!("missing comultiplication component ({i},{j})"))
                })?;
                if m.cols() != self.dims[i + j] || m.rows() != self.dims[i] * self.dims[j] {
                    return Err(Error::DimensionMismatch(format!(
                        "comultiplication ({i},{j}) has shape {}x{}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        for i in 1..=n_max {
            for j in 1..=n_max - i {
                for k in 1..=n_max - i - j {
                    let id_i = Matrix::identity(self.field, self.dims[i]);
                    let id_k = Matrix::identity(self.field, self.dims[k]);
                    let left = self.comult[&(i, j)].kron(&id_k).mul(&self.comult[&(i + j, k)]);
                    let right = id_i.kron(&self.comult[&(j, k)]).mul(&self.comult[&(i, j + k)]);
                    if left != right {
                        return Err(Error::InvalidStructure(format!(
                            "comultiplication is not coassociative on degrees ({i},{j},{k})"
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

    pub fn n_max(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    /// `C_{i+j} -> C_i ⊗ C_j` for `i, j ≥ 1`.
    pub fn comult(&self, i: usize, j: usize) -> &Matrix {
        &self.comult[&(i, j)]
    }

    /// Components as subspaces of `V^{⊗n}`, when the slice came from one.
    pub fn embedding(&self) -> Option<&[Subspace]> {
        self.embedding.as_deref()
    }

    /// Iterated comultiplication `C_n -> C_1^{⊗n}`.
    pub fn iterated_comultiplication(&self, n: usize) -> Matrix {
        let d = self.dims.get(1).copied().unwrap_or(0);
        if n == 0 {
            return Matrix::identity(self.field, 1);
        }
        let mut acc = Matrix::identity(self.field, self.dims[1]);
        for k in 2..=n {
            acc = acc
                .kron(&Matrix::identity(self.field, d))
                .mul(self.comult(k - 1, 1));
        }
        acc
    }

    pub fn truncate(&self, n_max: usize) -> Result<Self> {
        if n_max > self.n_max() {
            return Err(Error::DegreeTooLarge {
                requested: n_max,
                available: self.n_max(),
            });
        }
        Ok(Self {
            field: self.field,
            dims: self.dims[..=n_max].to_vec(),
            comult: self
                .comult
                .iter()
                .filter(|((i, j), _)| i + j <= n_max)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            embedding: self.embedding.as_ref().map(|e| e[..=n_max].to_vec()),
        })
    }

    pub fn offset(&self, n: usize) -> usize {
        self.dims[..n].iter().sum()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(l: u64) -> PrimeField {
        PrimeField::new(l).unwrap()
    }

    #[test]
    fn truncated_polynomial_dims() {
        let a = GradedSliceAlgebra::truncated_polynomial(f(3), 3, 5).unwrap();
        assert_eq!(a.dims(), &[1, 1, 1, 0, 0, 0]);
        assert_eq!(a.word_product(&[0, 0]), vec![1]);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // A_1 = <x>, A_2 = <y>, A_3 = <z> with x·x = y, x·y = z but y·x = 0.
        let fl = f(2);
        let mut mult = BTreeMap::new();
        mult.insert((1, 1), Matrix::identity(fl, 1));
        mult.insert((1, 2), Matrix::identity(fl, 1));
        mult.insert((2, 1), Matrix::zeros(fl, 1, 1));
        let err = GradedSliceAlgebra::new(fl, vec![1, 1, 1, 1], mult).unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(_)));
    }

    #[test]
    fn tensor_coalgebra_on_one_generator() {
        let fl = f(5);
        let comps = (0..4).map(|_| Subspace::full(fl, 1)).collect();
        let c = GradedSliceCoalgebra::from_tensor_subspaces(fl, 1, comps).unwrap();
        assert_eq!(c.dims(), &[1, 1, 1, 1]);
        assert_eq!(c.iterated_comultiplication(3), Matrix::identity(fl, 1));
    }

    #[test]
    fn non_closed_subspaces_are_rejected() {
        // C_2 = span(e1⊗e2) but C_1 = span(e1) only.
        let fl = f(2);
        let comps = vec![
            Subspace::full(fl, 1),
            Subspace::span(fl, 2, &[vec![1, 0]]),
            Subspace::span(fl, 4, &[vec![0, 1, 0, 0]]),
        ];
        assert!(GradedSliceCoalgebra::from_tensor_subspaces(fl, 2, comps).is_err());
    }
}
