use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: nonpositive weight {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("line {line}: dimension mismatch, expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("unknown id {0}")]
    UnknownId(usize),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("empty solution")]
    EmptySolution,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires a graph instance")]
    NotAGraph,

    #[error("operation requires a Euclidean instance")]
    NotEuclidean,

    #[error("enumeration budget exceeded: {needed} candidate sets needed, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("separator search failed after {densifications} densification rounds: {reason}")]
    SeparatorFailed { densifications: usize, reason: String },

    #[error("partition does not match instance: {0}")]
    PartitionMismatch(String),

    #[error("malformed query ({0}, {1}): {2}")]
    MalformedQuery(usize, usize, String),

    #[error("greedy coarsening failed: {0}")]
    CoarseningFailed(String),
}
