use crate::set::VertexSet;
use thiserror::Error;

fn place(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}"),
        None => "input".to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{}: {message}", place(.line))]
    Syntax {
        line: Option<usize>,
        message: String,
    },
    #[error("{}: edge weight must be positive", place(.line))]
    NonPositiveWeight { line: Option<usize> },
    #[error("{}: vertex id out of range", place(.line))]
    VertexOutOfRange { line: Option<usize> },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("a side of the cut has zero volume")]
    ZeroVolumeSide,
    #[error("need at least two vertices of positive degree")]
    TooFewVertices,
    #[error("{what} over {size} vertices exceeds the cap of {cap} (raise it with --max-n)")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has a zero-degree vertex")]
    ZeroDegreeVertex,
    #[error("partition does not match the vertex set")]
    PartitionMismatch,
    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),
    #[error("induced subgraph has no edges")]
    EdgelessSubgraph,
    #[error("vertex set is not a connected component")]
    NotAComponent,
    #[error("vertex set is not a union of connected components")]
    NotAComponentUnion,
    #[error("graph has isolated vertices")]
    IsolatedVerticesPresent,
    #[error("no sparse cut exists inside component {{{component}}}")]
    HypothesisViolated { component: VertexSet },
    #[error("subgraph has more edges than the requested total")]
    TooManyEdgesInH,
    #[error("parameters produce a degenerate construction")]
    DegenerateParameters,
}

pub type Result<T> = std::result::Result<T, Error>;
