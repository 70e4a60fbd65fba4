use thiserror::Error;

use crate::digraph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for digraph of order {n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(VertexId, VertexId),
    #[error("cannot contract vertex {0} into itself")]
    ContractSelf(VertexId),
    #[error("contraction needs arc {0} -> {1}")]
    MissingArc(VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("parameter override {name} must be at least 1, got {value}")]
    InvalidOverride { name: &'static str, value: u64 },
    #[error("subsolution precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// A construction that the default thresholds guarantee did not go
    /// through under overridden thresholds.
    #[error("threshold violation: {0}")]
    ThresholdViolation(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("oracle refuses digraphs with more than {limit} vertices (got {n})")]
    TooLarge { n: usize, limit: usize },
}
