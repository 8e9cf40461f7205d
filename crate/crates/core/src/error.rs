use thiserror::Error;

/// Errors raised by operator arithmetic, constructors and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("arity overflow: {0} exceeds 3")]
    ArityOverflow(usize),
    #[error("expected an operator of arity {expected}, got arity {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid arity {0}; supported arities are 1, 2 and 3")]
    InvalidArity(usize),
    #[error("invalid leg tag {0:?}; expected 12, 13 or 23")]
    InvalidLeg(String),
    #[error("matrix is singular")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("check {check} is not applicable: {reason}")]
    NotApplicable { check: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
