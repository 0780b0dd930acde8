use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// Errors from parsing the edge-list text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input `{text}`")]
    Malformed { line: usize, text: String },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: VertexId, v: VertexId },
    #[error("line {line}: loop at vertex {v}")]
    Loop { line: usize, v: VertexId },
    #[error("line {line}: vertex {v} out of range for n = {n}")]
    VertexOutOfRange { line: usize, v: VertexId, n: usize },
    #[error("header announces {expected} edges but {found} were read")]
    EdgeCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid edge id {0}")]
    InvalidEdge(EdgeId),
    #[error("invalid vertex id {0}")]
    InvalidVertex(VertexId),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("weight vector has dimension {found}, graph has {expected} edges")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weight vector is not feasible for {0}")]
    Infeasible(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance has {size} items, exceeding the exact-solver cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
