use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("matrix must be square with dimension >= 1")]
    NotSquare,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero vector not allowed")]
    ZeroVector,
    #[error("selection splits a complex-conjugate pair")]
    SNotConjugationClosed,
    #[error("eigenvalue selection out of range")]
    BadSelection,
    #[error("spectrum is not positive real: {0}")]
    SpectrumNotPositiveReal(String),
    #[error("the pairing sequence is identically zero")]
    ZeroSequence,
    #[error("division by zero algebraic number")]
    DivisionByZero,
    #[error("even root of a negative number")]
    NegativeRadicand,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
