mod common;

use common::{field, random_corpus};
use proptest::prelude::*;
use quadkit::cli::InputDocument;
use quadkit::exactla::{Matrix, PrimeField, Subspace};
use quadkit::koszul::{koszul_by_distributivity, koszul_by_homology};
use quadkit::milnor::{build_truncated_algebra, tame_symbol, Rational, RationalSymbolAlgebraSpec};
use quadkit::nilpotent::{augmentation_filtration, augmentation_filtration_literal, group_coalgebra, FiniteGroupTable};
use quadkit::quadratic::{
    build_algebra_slice, build_coalgebra_slice, quadratic_part_of_algebra, QuadraticPresentation,
};
use quadkit::tensor::power;

fn prime() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(field)
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (prime(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(f, r, c)| {
        prop::collection::vec(prop::collection::vec(0u64..f.l() as u64, c), r)
            .prop_map(move |rows| Matrix::from_rows(f, c, &rows).unwrap())
    })
}

fn subspace_pair(max_ambient: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
    (prime(), 1..=max_ambient).prop_flat_map(|(f, n)| {
        let vecs = prop::collection::vec(prop::collection::vec(0u32..f.l(), n), 0..=n);
        (vecs.clone(), vecs).prop_map(move |(a, b)| (Subspace::span(f, n, &a), Subspace::span(f, n, &b)))
    })
}

/// Presentations with `dim V ≤ 3` over `F_2`, `F_3` or `F_5`.
fn presentation() -> impl Strategy<Value = QuadraticPresentation> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3).prop_flat_map(|(l, d)| {
        let f = field(l);
        prop::collection::vec(prop::collection::vec(0u32..f.l(), d * d), 0..=d * d).prop_map(move |vs| {
            QuadraticPresentation::with_default_names(f, d, Subspace::span(f, d * d, &vs)).unwrap()
        })
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=40)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix(6, 6)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        prop_assert_eq!(m.image().dim(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn sum_and_intersection_dimensions((a, b) in subspace_pair(6)) {
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a) && i.is_subspace_of(&b));
        prop_assert!(a.is_subspace_of(&s) && b.is_subspace_of(&s));
        prop_assert_eq!(a.annihilator().annihilator(), a.clone());
    }

    #[test]
    fn inverse_round_trips(m in (prime(), 1usize..=5).prop_flat_map(|(f, n)| {
        prop::collection::vec(prop::collection::vec(0u64..f.l() as u64, n), n)
            .prop_map(move |rows| Matrix::from_rows(f, n, &rows).unwrap())
    })) {
        let n = m.rows();
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(m.field(), n));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(m.field(), n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn algebra_and_ideal_fill_tensor_power(p in presentation()) {
        let a = build_algebra_slice(&p, 4);
        for n in 0..=4 {
            prop_assert_eq!(a.dim(n) + p.ideal_component(n).dim(), power(p.dim_v(), n));
        }
    }

    #[test]
    fn coalgebra_component_lies_in_every_relation_slot(p in presentation()) {
        for n in 2..=4 {
            let c = p.coalgebra_component(n);
            for i in 1..n {
                prop_assert!(c.is_subspace_of(&p.embed_relations(i, n).unwrap()));
            }
        }
    }

    #[test]
    fn quadratic_part_round_trips(p in presentation()) {
        let q = quadratic_part_of_algebra(&build_algebra_slice(&p, 4)).unwrap();
        prop_assert_eq!(q.presentation.relations(), p.relations());
        prop_assert_eq!(q.iso_through(), 4);
    }

    #[test]
    fn multiplication_is_associative(p in presentation()) {
        let a = build_algebra_slice(&p, 4);
        let f = a.field();
        let id = |n: usize| Matrix::identity(f, a.dim(n));
        for i in 1..=2 {
            for j in 1..=(3 - i) {
                let k = 4 - i - j;
                let left = a.mult(i + j, k).mul(&a.mult(i, j).kron(&id(k)));
                let right = a.mult(i, j + k).mul(&id(i).kron(a.mult(j, k)));
                prop_assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn comultiplication_is_coassociative(p in presentation()) {
        let c = build_coalgebra_slice(&p, 4);
        let f = c.field();
        let id = |n: usize| Matrix::identity(f, c.dim(n));
        for i in 1..=2 {
            for j in 1..=(3 - i) {
                let k = 4 - i - j;
                let left = c.comult(i, j).kron(&id(k)).mul(c.comult(i + j, k));
                let right = id(i).kron(c.comult(j, k)).mul(c.comult(i, j + k));
                prop_assert_eq!(left, right);
            }
        }
    }

    #[test]
    fn koszul_criteria_agree(p in presentation()) {
        let h = koszul_by_homology(&p, 4).unwrap();
        let d = koszul_by_distributivity(&p, 4).unwrap();
        prop_assert_eq!(h.is_koszul(), d.is_koszul());
        prop_assert_eq!(h.first_failure(), d.first_failure());
    }

    #[test]
    fn documents_round_trip(p in presentation()) {
        let doc = InputDocument::Presentation(p);
        prop_assert_eq!(InputDocument::parse(&doc.to_text()).unwrap(), doc);
    }

    #[test]
    fn tame_symbol_is_bimultiplicative(a in rational(), b in rational(), c in rational(), p in odd_prime()) {
        let ab_c = tame_symbol(a * b, c, p).unwrap();
        let prod = tame_symbol(a, c, p).unwrap() * tame_symbol(b, c, p).unwrap() % p;
        prop_assert_eq!(ab_c, prod);
        let c_ab = tame_symbol(c, a * b, p).unwrap();
        let prod = tame_symbol(c, a, p).unwrap() * tame_symbol(c, b, p).unwrap() % p;
        prop_assert_eq!(c_ab, prod);
    }

    #[test]
    fn tame_symbol_is_antisymmetric(a in rational(), b in rational(), p in odd_prime()) {
        let ab = tame_symbol(a, b, p).unwrap();
        let ba = tame_symbol(b, a, p).unwrap();
        prop_assert_eq!(ab * ba % p, 1);
    }

    #[test]
    fn steinberg_relation(a in rational(), p in odd_prime()) {
        if let Some(b) = a.one_minus() {
            prop_assert_eq!(tame_symbol(a, b, p).unwrap(), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn filtration_recursion_matches_definition(
        n in 1usize..=6,
        l in prop::sample::select(vec![2u64, 3]),
    ) {
        let g = FiniteGroupTable::cyclic(n).unwrap();
        let c = group_coalgebra(&g, field(l)).unwrap();
        prop_assert_eq!(augmentation_filtration(&c), augmentation_filtration_literal(&c));
    }
}

#[test]
fn symbol_products_commute_mod_two() {
    let spec = RationalSymbolAlgebraSpec::new(2, 4).unwrap();
    let a = build_truncated_algebra(&spec, 2).unwrap();
    let d = a.dim(1);
    let m = a.mult(1, 1);
    for i in 0..d {
        for j in 0..d {
            assert_eq!(m.column(i * d + j), m.column(j * d + i), "generators {i}, {j}");
        }
    }
}

#[test]
fn random_corpus_is_reproducible() {
    let a: Vec<_> = random_corpus(10).into_iter().map(|(_, p)| p.relations().clone()).collect();
    let b: Vec<_> = random_corpus(10).into_iter().map(|(_, p)| p.relations().clone()).collect();
    assert_eq!(a, b);
}
