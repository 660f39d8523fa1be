use thiserror::Error;

use crate::algebra::Var;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),

    #[error("series precondition violated: {0}")]
    SeriesPrecondition(String),

    #[error("coefficient of exponent {requested} is beyond the retained order {top}")]
    Truncated { requested: i64, top: i64 },

    #[error("cannot invert the zero series")]
    ZeroInverse,

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed monodromy graph: {0}")]
    MalformedGraph(String),

    #[error("cache file {path}: {source}")]
    CacheIo {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("cache file line {line}: {msg}")]
    CacheRecord { line: usize, msg: String },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("unstable correlator ({g},{n}) is not part of the comparison")]
    UnstableCorrelator { g: usize, n: usize },

    #[error("insufficient grid: {0}")]
    InsufficientGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
