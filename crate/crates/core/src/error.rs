use thiserror::Error;

/// Errors raised while building or checking a symbolic pyramid.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller passed arguments outside an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// Input data does not conform to its schema.
    #[error("data error: {0}")]
    Data(String),

    /// A document could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Every candidate pair was either non-aggregable or rejected.
    #[error("no aggregable pair remains at iteration {iteration}")]
    NoAggregablePair { iteration: usize },

    /// The iteration budget ran out before the root node was formed.
    #[error("iteration limit of {limit} exceeded before the pyramid was complete")]
    IterationLimit { limit: usize },

    /// An internal structure invariant does not hold.
    #[error("structural invariant violated: {0}")]
    Structure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the construction algorithm itself, as opposed to bad input.
    pub fn is_algorithm_failure(&self) -> bool {
        matches!(
            self,
            Error::NoAggregablePair { .. } | Error::IterationLimit { .. } | Error::Structure(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
