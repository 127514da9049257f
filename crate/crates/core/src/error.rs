use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyDimensions { rows: usize, cols: usize },

    #[error("matrices wider than {max} columns are not supported (got {cols})")]
    TooWide { cols: usize, max: usize },

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("matrices belong to different classes A(R,S): {0}")]
    ClassMismatch(String),

    #[error("class A(R,S) is empty: {0}")]
    Infeasible(String),

    #[error("{what} requires {expected} n, got {n}")]
    Parity {
        what: &'static str,
        expected: &'static str,
        n: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("product hypothesis violated: u' = u'' = {0} (total ones of the value-1 and value-0 blocks must differ)")]
    Hypothesis(u64),

    #[error("{what}: limit of {limit} exceeded")]
    ResourceLimit { what: &'static str, limit: u128 },

    #[error("enumeration budget exceeded: {needed} members requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
