use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("invalid vertex pair ({0}, {1})")]
    InvalidPair(usize, usize),
    #[error("vertex sets are not disjoint")]
    InvalidPartition,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
