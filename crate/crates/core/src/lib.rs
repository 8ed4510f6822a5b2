pub mod algebra;
pub mod classify;
pub mod coeff;
pub mod constructions;
pub mod derfinite;
pub mod derivation;
pub mod error;
pub mod nil;
pub mod operator;
pub mod parse;
pub mod poly;
pub mod span;

pub use algebra::{lie_span_closure, AlgebraKind, LowerCentralSeries, StructureAlgebra};
pub use classify::{check_a_vs_al, classify, nil_prime_membership, s_value, Condition, NilpotencyReport, SValue};
pub use coeff::{Coeff, Field};
pub use constructions::{build, run_claims, ClaimReport, ClaimResult, ClaimStatus, ExampleId, ExampleInstance, FreeAlgebraModule, ParamRequest, Params};
pub use derfinite::{ad_nilpotence_index, fg_lie_nilpotency, AdIndex, DerivationLieAlgebra, FgNilpotencyReport};
pub use derivation::{apply_word, extend_linear_to_derivation, linear_matrix, iterated_bracket, linear_combination, Derivation, WordApplication};
pub use error::{Error, Result};
pub use nil::{
    check_deg_laws, check_generated_set_invariance, deg_delta, find_periodic_schedule, nil_membership, set_locally_nilpotent,
    unil_lie_membership, word_vanishing_depth, Actor, Certificate, Degree, OperatorSet, PeriodicSchedule, Verdict,
};
pub use operator::{LinearOperator, Vector};
pub use poly::{Monomial, Polynomial, Ring};
pub use span::{Closure, SpanBasis, SparseVec};
