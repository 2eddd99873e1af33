use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("instance has {n} vertices, above the exhaustive-search limit of {limit}")]
    ScaleExceeded { n: usize, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("secant pair {first:?} / {second:?}")]
    SecantPair {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("digraph contains a directed cycle")]
    Cyclic,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("budget exhausted after {0} steps")]
    BudgetExhausted(u64),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
