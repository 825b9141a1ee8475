use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("feature matrix has {actual} values, expected {rows} x {dim}")]
    FeatureShape {
        rows: usize,
        dim: usize,
        actual: usize,
    },
    #[error("operation requires a non-empty graph")]
    EmptyGraph,
    #[error("operation requires at least one edge")]
    EdgelessGraph,
    #[error("graph is complete; no non-edge to add")]
    CompleteGraph,
    #[error("operation needs at least {needed} nodes, graph has {actual}")]
    TooFewNodes { needed: usize, actual: usize },
    #[error("graph has no open triangle")]
    NoOpenTriangle,
    #[error("node {0} does not carry a one-hot feature row")]
    NotOneHot(usize),
    #[error("feature dimension {0} too small for attribute change")]
    FeatureDimTooSmall(usize),
    #[error("label {label} out of range for {num_classes} classes")]
    LabelOutOfRange { label: usize, num_classes: usize },
    #[error("graph {index} is unlabeled")]
    MissingLabel { index: usize },
    #[error("feature dimension mismatch: {0} vs {1}")]
    FeatureDimMismatch(usize, usize),
    #[error("node set size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("requested {requested} nodes but only {available} available")]
    TooManyNodes { requested: usize, available: usize },
    #[error("graph set needs at least {needed} graphs, has {actual}")]
    TooFewGraphs { needed: usize, actual: usize },
    #[error("cannot place {edges} edges on {nodes} nodes")]
    InfeasibleEdgeCount { nodes: usize, edges: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
    #[error("missing required file {}", .0.display())]
    MissingFile(PathBuf),
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("nothing to write")]
    EmptyOutput,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// The input graph lacks the structure an augmenter acts on; retrying
    /// on a different graph may succeed.
    pub fn is_inapplicable(&self) -> bool {
        matches!(
            self,
            Error::EmptyGraph
                | Error::EdgelessGraph
                | Error::CompleteGraph
                | Error::NoOpenTriangle
                | Error::TooFewNodes { .. }
                | Error::NotOneHot(_)
                | Error::FeatureDimTooSmall(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
