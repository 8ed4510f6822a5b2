//! Strategies and builders shared by the integration tests.
#![allow(dead_code)]

use derivlab::algebra::AlgebraKind;
use derivlab::span::{saturate, SpanBasis};
use derivlab::{Closure, Coeff, Derivation, Field, LinearOperator, Monomial, Polynomial, Ring, StructureAlgebra, Vector};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// Fixed seed so every run explores the same cases.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn xyz() -> Ring {
    Ring::new(Field::Rational, ["x", "y", "z"]).unwrap()
}

/// `(exponents, numerator, denominator)` per term.
pub type PolySpec = Vec<(Vec<u32>, i64, i64)>;

pub fn poly_spec(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = PolySpec> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, nvars), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(mut e, p, q)| {
                // Trim to total degree max_deg.
                while e.iter().sum::<u32>() > max_deg {
                    if let Some(m) = e.iter_mut().filter(|v| **v > 0).last() {
                        *m -= 1;
                    }
                }
                (e, p, q)
            })
            .collect()
    })
}

/// Polynomial in the first `spec[i].0.len()` variables of `ring`.
pub fn poly(ring: &Ring, spec: &PolySpec) -> Polynomial {
    let f = ring.field();
    Polynomial::from_terms(
        ring,
        spec.iter().map(|(e, p, q)| {
            (
                Monomial::from_pairs(e.iter().enumerate().map(|(i, &k)| (i, k))),
                f.from_ratio(*p, *q).unwrap(),
            )
        }),
    )
}

/// Images of `x, y, z` with `D(x)` constant, `D(y) ∈ k[x]`, `D(z) ∈ k[x, y]`.
pub type TriSpec = (PolySpec, PolySpec, PolySpec);

pub fn triangular_spec(max_deg: u32) -> impl Strategy<Value = TriSpec> {
    (poly_spec(1, 0, 1), poly_spec(1, max_deg, 2), poly_spec(2, max_deg, 3))
}

pub fn from_images(ring: &Ring, (a, b, c): &TriSpec) -> Derivation {
    Derivation::new(ring, [(0, poly(ring, a)), (1, poly(ring, b)), (2, poly(ring, c))]).unwrap()
}

/// Arbitrary images in all three variables.
pub fn derivation_spec(max_deg: u32) -> impl Strategy<Value = TriSpec> {
    (poly_spec(3, max_deg, 2), poly_spec(3, max_deg, 2), poly_spec(3, max_deg, 2))
}

pub fn matrix_spec(dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(lo..=hi, dim), dim)
}

pub fn matrix(field: Field, rows: &[Vec<i64>]) -> LinearOperator {
    LinearOperator::from_rows(field, rows.iter().map(|r| r.iter().map(|&c| field.from_i64(c)).collect()).collect()).unwrap()
}

pub fn q(n: i64) -> Coeff {
    Field::Rational.from_i64(n)
}

/// The algebra generated by `gens` inside the matrices, with the generators
/// in its coordinates and the basis matrices. `None` when the closure exceeds
/// `dim_bound` or is zero.
pub fn matrix_algebra(
    kind: AlgebraKind,
    gens: &[LinearOperator],
    dim_bound: usize,
) -> Option<(StructureAlgebra, Vec<Vector>, Vec<LinearOperator>)> {
    let field = gens[0].field();
    let n = gens[0].dim();
    let sparse: Vec<_> = gens.iter().map(LinearOperator::to_sparse).collect();
    let product = |a: &_, b: &_| {
        let a = LinearOperator::from_sparse(field, n, a);
        let b = LinearOperator::from_sparse(field, n, b);
        match kind {
            AlgebraKind::Associative => a.compose(&b),
            AlgebraKind::Lie => a.bracket(&b),
        }
        .unwrap()
        .to_sparse()
    };
    let Closure::Closed(basis) = saturate(field, &sparse, product, kind == AlgebraKind::Lie, dim_bound) else {
        return None;
    };
    if basis.is_empty() {
        return None;
    }
    let ops: Vec<_> = basis.iter().map(|v| LinearOperator::from_sparse(field, n, v)).collect();
    let alg = StructureAlgebra::from_operators(kind, &ops, StructureAlgebra::default_names(ops.len())).unwrap();
    let mut span: SpanBasis<_, ()> = SpanBasis::new(field);
    for b in &basis {
        span.insert((), b.clone());
    }
    let h = sparse.iter().map(|g| span.coordinates(g).unwrap()).collect();
    Some((alg, h, ops))
}
