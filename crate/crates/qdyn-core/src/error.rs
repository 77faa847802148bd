use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("block {block} (label {label}) is not Hermitian: relative residual {residual:.3e}")]
    NotHermitian { block: usize, label: i64, residual: f64 },

    #[error("operands live on different bases")]
    BasisMismatch,

    #[error("block {block} has dimension {found}, expected {expected}")]
    DimensionMismatch { block: usize, expected: usize, found: usize },

    #[error("state {0} is not part of the basis")]
    UnknownState(String),

    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("non-finite value in integrated state at step {step}")]
    NonFinite { step: usize },

    #[error("state norm squared is {0}, expected 1")]
    NormNotUnity(f64),

    #[error("density matrix trace is {0}, expected 1")]
    TraceNotUnity(f64),

    #[error("expectation value has imaginary residue {0:.3e}")]
    ImaginaryResidue(f64),
}
