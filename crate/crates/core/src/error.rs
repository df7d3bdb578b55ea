use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid stabilizer: {0}")]
    InvalidStabilizer(String),

    #[error("non-Clifford factor {0} cannot conjugate a Pauli string")]
    NonClifford(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} guard exceeded: {got} > {limit}")]
    Guard {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
