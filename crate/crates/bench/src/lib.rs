//! Fixtures shared by the benchmarks.

use derivlab::algebra::strictly_upper_triangular;
use derivlab::{build, Derivation, ExampleId, ExampleInstance, Field, OperatorSet, ParamRequest, Polynomial, Ring, StructureAlgebra};

/// The shift derivations `D_0..D_n` and the variable `x_0`.
pub fn shift_set(n: usize) -> (OperatorSet<Derivation>, Polynomial) {
    let inst = build(ExampleId::Ex298, ParamRequest { n: Some(n), ..Default::default() }).expect("valid n");
    let ExampleInstance::Ex298(ex) = inst else {
        unreachable!("built the shift example")
    };
    let x0 = ex.ring.var(0);
    (OperatorSet::new(ex.derivations).expect("shared ring"), x0)
}

/// `{∂/∂x_1, x_1 ∂/∂x_2, ..., x_{k-1} ∂/∂x_k}`, a nilpotent chain of length `k`.
pub fn chain_derivations(k: usize) -> Vec<Derivation> {
    let ring = Ring::new(Field::Rational, (1..=k).map(|i| format!("x{i}"))).expect("distinct names");
    let mut out = vec![Derivation::partial(&ring, 0)];
    for i in 1..k {
        out.push(Derivation::scaled_partial(&ring, ring.var(i - 1), i).expect("same ring"));
    }
    out
}

pub fn upper_triangular(d: usize) -> StructureAlgebra {
    strictly_upper_triangular(Field::Rational, d)
}
