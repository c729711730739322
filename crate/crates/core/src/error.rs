use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed graph input. `line` is 1-based when the input is the text format.
    #[error("parse error{}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("edge {0} is a loop and cannot be contracted")]
    ContractLoop(usize),

    #[error("edge {edge} out of range for a graph with {edges} edges")]
    EdgeOutOfRange { edge: usize, edges: usize },

    #[error("graph has bridges {0:?}; contract them first")]
    HasBridges(Vec<usize>),

    #[error("graph has no cycles (b = 0); the threshold is undefined")]
    NoCycles,

    #[error("{what} exceeds the limit: {actual} > {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("linear program is unbounded")]
    Unbounded,

    /// A proven identity failed to hold on a concrete instance. Always a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}
