use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid prime basis: {0}")]
    InvalidPrimeBasis(String),

    #[error("operands use different prime bases")]
    BasisMismatch,

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("malformed query: {0}")]
    MalformedQuery(String),

    #[error("enumeration needs {needed} operations, budget limit is {limit}")]
    BudgetExceeded { needed: u128, limit: u64 },

    #[error("generator bound {bound} is below the largest index {needed} used by the element")]
    BoundTooSmall { bound: usize, needed: usize },

    #[error("operands live in different cyclotomic fields")]
    FieldMismatch,

    #[error("operands live in different quantum algebras")]
    AlgebraMismatch,

    #[error("incompatible algebras: {0}")]
    Incompatible(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("growth series needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("growth series is not monotone at r = {r}")]
    NonMonotone { r: u64 },

    #[error("growth series radii must be consecutive (gap after r = {r})")]
    NotConsecutive { r: u64 },

    #[error("malformed growth series line {line}: {msg}")]
    SeriesFormat { line: usize, msg: String },
}
