use thiserror::Error;

/// Errors produced by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("empty sequence")]
    EmptySequence,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("truncation overflow: product of length {len} exceeds bound {bound}")]
    TruncationOverflow { len: usize, bound: usize },
    #[error("element does not live in the actors' ambient space")]
    AmbientMismatch,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
