use thiserror::Error;

/// Errors reported by constructors, parsers and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("part {0:?} does not induce a connected subgraph")]
    DisconnectedPart(Vec<usize>),
    #[error("vertex {0} lies in more than one part")]
    OverlappingParts(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("search budget exhausted")]
    BudgetExceeded,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("construction failed validation: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
