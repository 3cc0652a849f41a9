use thiserror::Error;

use crate::graph::Edge;

/// Errors produced by graph construction, colorings, and searches.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two edges sharing `vertex` carry the same color.
    #[error("improper coloring: edges {first:?} and {second:?} both have color {color} at vertex {vertex}")]
    Improper {
        vertex: usize,
        first: Edge,
        second: Edge,
        color: i64,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("class-1 certificate unavailable for {0}; use the search oracle instead")]
    ClassOneUnavailable(String),

    #[error("no continuous-USE coloring known for {0}; use the search oracle instead")]
    NoStrategy(String),

    #[error("search exhausted without a witness: {0}")]
    NotFound(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
