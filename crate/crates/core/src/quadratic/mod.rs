//! Quadratic presentations `(V, R)`, the algebra `T(V)/(R)` and the
//! coalgebra `⊕_n ⋂_i V^{i-1}⊗R⊗V^{n-i-1}` they define, quadratic parts of
//! graded slices and the comparison maps to them.

mod slices;
pub mod symbolic;

use std::collections::{BTreeMap, BTreeSet};

pub use slices::{GradedSliceAlgebra, GradedSliceCoalgebra, QuotientComponent, TensorQuotient};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Subspace};
use crate::tensor;

/// Generators plus a relation subspace of `V ⊗ V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPresentation {
    field: PrimeField,
    generators: Vec<String>,
    relations: Subspace,
}

impl QuadraticPresentation {
    pub fn new(field: PrimeField, generators: Vec<String>, relations: Subspace) -> Result<Self> {
        let d = generators.len();
        if relations.ambient_dim() != d * d || relations.field() != field {
            return Err(Error::DimensionMismatch(format!(
                "relations live in dimension {}, expected {}",
                relations.ambient_dim(),
                d * d
            )));
        }
        let unique: BTreeSet<&String> = generators.iter().collect();
        if unique.len() != d {
            return Err(Error::InvalidStructure("generator names must be unique".into()));
        }
        Ok(Self {
            field,
            generators,
            relations,
        })
    }

    /// Relations given as symbolic quadratic expressions.
    pub fn from_symbolic(field: PrimeField, generators: &[&str], relations: &[&str]) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let mut rows = Vec::new();
        for (k, rel) in relations.iter().enumerate() {
            let e = symbolic::parse_expression(rel, &names, field, k + 1, 1)?;
            if e.degree != 2 {
                return Err(Error::Parse {
                    line: k + 1,
                    column: 1,
                    message: format!("relation has degree {}, expected 2", e.degree),
                });
            }
            rows.push(e.coords);
        }
        let d = names.len();
        Self::new(field, names, Subspace::span(field, d * d, &rows))
    }

    /// Generators named `v1 … vd`.
    pub fn with_default_names(field: PrimeField, dim_v: usize, relations: Subspace) -> Result<Self> {
        Self::new(field, (1..=dim_v).map(|k| format!("v{k}")).collect(), relations)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn dim_v(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Relations rendered as symbolic expressions.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .vectors()
            .iter()
            .map(|v| symbolic::format_expression(v, 2, &self.generators, self.field))
            .collect()
    }

    /// `V^{⊗(i-1)} ⊗ R ⊗ V^{⊗(n-i-1)}` inside `V^{⊗n}`.
    pub fn embed_relations(&self, i: usize, n: usize) -> Result<Subspace> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange(format!(
                "relation position {i} in degree {n}"
            )));
        }
        let d = self.dim_v();
        let left = Subspace::full(self.field, tensor::power(d, i - 1));
        let right = Subspace::full(self.field, tensor::power(d, n - i - 1));
        Ok(left.tensor(&self.relations).tensor(&right))
    }

    /// `Σ_i V^{⊗(i-1)} ⊗ R ⊗ V^{⊗(n-i-1)}`, the degree-`n` part of the ideal.
    pub fn ideal_component(&self, n: usize) -> Subspace {
        let ambient = tensor::power(self.dim_v(), n);
        let rows: Vec<Vec<u32>> = (1..n)
            .flat_map(|i| self.embed_relations(i, n).expect("in range").vectors())
            .collect();
        Subspace::span(self.field, ambient, &rows)
    }

    /// `A_n` as a quotient of `V^{⊗n}`: returns the projection, whose row
    /// count is `dim A_n`.
    pub fn algebra_component(&self, n: usize) -> Matrix {
        self.ideal_component(n).quotient_map()
    }

    /// `C_n ⊆ V^{⊗n}`.
    pub fn coalgebra_component(&self, n: usize) -> Subspace {
        self.coalgebra_components(n).pop().expect("nonempty")
    }

    /// `C_0, …, C_{n_max}`, each computed as `(C_{n-1} ⊗ V) ∩ (V^{⊗(n-2)} ⊗ R)`.
    pub fn coalgebra_components(&self, n_max: usize) -> Vec<Subspace> {
        let d = self.dim_v();
        let mut comps = vec![Subspace::full(self.field, 1)];
        for n in 1..=n_max {
            let c = if n == 1 {
                Subspace::full(self.field, d)
            } else {
                let ext = comps[n - 1].tensor(&Subspace::full(self.field, d));
                let rel = self.embed_relations(n - 1, n).expect("in range");
                ext.intersect(&rel).expect("same ambient")
            };
            comps.push(c);
        }
        comps
    }

    pub fn tensor_quotient(&self, n_max: usize) -> TensorQuotient {
        let mut gens = BTreeMap::new();
        gens.insert(2, self.relations.vectors());
        TensorQuotient::new(self.field, self.dim_v(), n_max, &gens).expect("well-formed relations")
    }
}

/// `{V, R}` through degree `n_max`.
pub fn build_algebra_slice(p: &QuadraticPresentation, n_max: usize) -> GradedSliceAlgebra {
    GradedSliceAlgebra::from_tensor_quotient(p.tensor_quotient(n_max), Some(p.generators().to_vec()))
        .expect("quotients of the tensor algebra are associative")
}

/// `⟨V, R⟩` through degree `n_max`.
pub fn build_coalgebra_slice(p: &QuadraticPresentation, n_max: usize) -> GradedSliceCoalgebra {
    GradedSliceCoalgebra::from_tensor_subspaces(p.field(), p.dim_v(), p.coalgebra_components(n_max))
        .expect("quadratic coalgebra components are closed under deconcatenation")
}

/// The map between a degree of the quadratic part and the actual slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub degree: usize,
    pub quadratic_dim: usize,
    pub actual_dim: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl Comparison {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Quadratic part of a slice together with the degree-wise comparison data.
#[derive(Debug, Clone)]
pub struct QuadraticPart {
    pub presentation: QuadraticPresentation,
    /// `A_1·A_1 = A_2` for algebras; `Δ_{11}` injective on `C_2` for
    /// coalgebras. When false the presentation only describes the
    /// truncation in degrees `≤ 2`.
    pub generated_in_degree_one: bool,
    pub comparisons: Vec<Comparison>,
}

impl QuadraticPart {
    /// Largest `n` such that the comparison is an isomorphism in every
    /// degree `≤ n`.
    pub fn iso_through(&self) -> usize {
        self.comparisons
            .iter()
            .take_while(|c| c.bijective())
            .last()
            .map_or(0, |c| c.degree)
    }
}

/// `qA` with `V = A_1`, `R = ker(A_1 ⊗ A_1 -> A_2)` and the maps `(qA)_n -> A_n`.
pub fn quadratic_part_of_algebra(a: &GradedSliceAlgebra) -> Result<QuadraticPart> {
    if a.n_max() < 2 {
        return Err(Error::DegreeTooLarge {
            requested: 2,
            available: a.n_max(),
        });
    }
    let field = a.field();
    let m11 = a.mult(1, 1);
    let relations = m11.kernel();
    let presentation = QuadraticPresentation::new(field, a.generator_names().to_vec(), relations)?;
    let q = presentation.tensor_quotient(a.n_max());
    let comparisons = (0..=a.n_max())
        .map(|n| {
            let words = &q.component(n).words;
            let images: Vec<Vec<u32>> = words.iter().map(|w| a.word_product(w)).collect();
            let rank = Matrix::from_columns(field, a.dim(n), &images).rank();
            Comparison {
                degree: n,
                quadratic_dim: words.len(),
                actual_dim: a.dim(n),
                rank,
                injective: rank == words.len(),
                surjective: rank == a.dim(n),
            }
        })
        .collect();
    Ok(QuadraticPart {
        presentation,
        generated_in_degree_one: m11.rank() == a.dim(2),
        comparisons,
    })
}

/// `qC` with `V = C_1`, `R = Δ_{11}(C_2)` and the maps `C_n -> (qC)_n`.
pub fn quadratic_part_of_coalgebra(c: &GradedSliceCoalgebra) -> Result<QuadraticPart> {
    if c.n_max() < 2 {
        return Err(Error::DegreeTooLarge {
            requested: 2,
            available: c.n_max(),
        });
    }
    let field = c.field();
    let d11 = c.comult(1, 1);
    let relations = d11.image();
    let presentation = QuadraticPresentation::with_default_names(field, c.dim(1), relations)?;
    let q = presentation.coalgebra_components(c.n_max());
    let comparisons = (0..=c.n_max())
        .map(|n| {
            let rank = c.iterated_comultiplication(n).rank();
            Comparison {
                degree: n,
                quadratic_dim: q[n].dim(),
                actual_dim: c.dim(n),
                rank,
                injective: rank == c.dim(n),
                surjective: rank == q[n].dim(),
            }
        })
        .collect();
    Ok(QuadraticPart {
        presentation,
        generated_in_degree_one: d11.rank() == c.dim(2),
        comparisons,
    })
}

/// Which object a presentation is read as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reading {
    /// `{V, R}`
    Algebra,
    /// `⟨V, R⟩`
    Coalgebra,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedPresentation {
    pub presentation: QuadraticPresentation,
    pub reading: Reading,
}

/// The dual object: same `(V, R)`, other reading.
pub fn dual(p: &TaggedPresentation) -> TaggedPresentation {
    TaggedPresentation {
        presentation: p.presentation.clone(),
        reading: match p.reading {
            Reading::Algebra => Reading::Coalgebra,
            Reading::Coalgebra => Reading::Algebra,
        },
    }
}
