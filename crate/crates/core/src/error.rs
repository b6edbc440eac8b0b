use thiserror::Error;

use crate::family::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial called with negative upper argument {0}")]
    NegativeArgument(i64),

    #[error("expected an integer, got {0}")]
    NonIntegerResult(String),

    #[error("expected a non-negative value, got {0}")]
    NegativeResult(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// Two independent evaluation routes produced different values.
    #[error("{route} disagrees for {family} at ({n},{r}): {left} vs {right}")]
    Inconsistent {
        route: &'static str,
        family: Family,
        n: u64,
        r: u64,
        left: String,
        right: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
