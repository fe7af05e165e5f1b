use alloc::string::String;

/// Errors raised by malformed inputs or violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex set belongs to a graph with {found} vertices, expected {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("graph has {n} vertices, above the brute-force cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("search space of {count} subsets exceeds the brute-force limit of {limit}")]
    SearchTooLarge { count: u128, limit: u128 },
    #[error("input graph must be connected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid expression: {0}")]
    InvalidExpression(String),
    #[error("expression is not irredundant: node {node} adds the existing edge {u}-{v}")]
    RedundantExpression { node: usize, u: usize, v: usize },
    #[error("vertex {0} is not dominated")]
    NotDominating(usize),
    #[error("terminal set is empty")]
    EmptyTerminals,
}

pub type Result<T> = core::result::Result<T, Error>;
