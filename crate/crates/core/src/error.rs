use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The argument lies outside the region where the routine is valid.
    #[error("domain error: {0}")]
    Domain(String),

    /// A query point exceeds the range covered by a precomputed table.
    #[error("range error: {x} exceeds table limit {limit}")]
    Range { x: f64, limit: u64 },

    #[error("capacity error: limit {limit} needs {needed} bytes, budget is {budget} bytes")]
    Capacity { limit: u64, needed: u64, budget: u64 },

    /// Dirichlet inverse requested for a table with f(1) = 0.
    #[error("singular coefficient table: f(1) = 0")]
    Singular,

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Gamma evaluated at a nonpositive integer.
    #[error("pole at s = {0}")]
    Pole(f64),

    #[error("evaluation failed: {0}")]
    Evaluation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
