use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyGraph,

    #[error("node index {index} out of range for graph with {num_nodes} nodes")]
    NodeOutOfRange { index: usize, num_nodes: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid activity: {0}")]
    InvalidActivity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {num_nodes} nodes, above the dense cap of {cap}; use power-psi instead")]
    DenseCapExceeded { num_nodes: usize, cap: usize },

    #[error("dense system is singular")]
    Singular,

    #[error(transparent)]
    Io(#[from] io::Error),
}
