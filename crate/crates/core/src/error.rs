use thiserror::Error;

/// Errors raised by the exact-arithmetic engines.
///
/// Every variant except [`Error::Internal`] describes a caller-side problem
/// (bad input, violated precondition, exhausted budget). `Internal` means two
/// independent computations that must agree did not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("negative entry {value} at position {index} where a nonnegative one is required")]
    NegativeExponent { index: usize, value: i64 },

    #[error("polynomial is not homogeneous")]
    NonHomogeneous,

    #[error("negative coefficient {coeff} at exponent {exponent:?}")]
    NegativeCoefficient { exponent: Vec<i64>, coeff: String },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NonSymmetric { row: usize, col: usize },

    #[error("matrix is not square")]
    NonSquare,

    #[error("invalid node or index: {0}")]
    InvalidNode(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("value is not integral: {0}")]
    NonIntegral(String),

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("budget exceeded: {what} would exceed the limit of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("integer overflow while counting")]
    Overflow,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
