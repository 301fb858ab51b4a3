use thiserror::Error;

#[derive(Debug, Error)]
pub enum AggError {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("instance has no budget")]
    NoBudget,
    #[error("instance has relay nodes; use the relay-aware solvers")]
    RelaysPresent,
    #[error("instance has no source nodes")]
    NoSources,
    #[error("instance too large for exhaustive search: {size} nodes exceeds cap {cap}")]
    OracleCap { size: usize, cap: usize },
    #[error("invalid route: {0}")]
    InvalidRoute(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("unknown routing solver `{0}`")]
    UnknownSolver(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, AggError>;
