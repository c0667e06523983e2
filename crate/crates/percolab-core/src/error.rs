//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),

    #[error("graph is not regular")]
    NotRegular,

    #[error("generation failed: {0}")]
    GenerationFailed(String),

    #[error("enumeration budget of {0} items exceeded")]
    BudgetExceeded(u64),

    #[error("graph file malformed at line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("eigensolver did not converge within {0} iterations")]
    EigenNonConvergence(usize),

    #[error("spectral certification inapplicable: {0}")]
    SpectralInapplicable(String),

    #[error("report schema mismatch: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
