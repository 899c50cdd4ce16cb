use thiserror::Error;

/// Errors raised while building or transforming the certified objects.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed simplex: {0}")]
    MalformedSimplex(String),
    #[error("invalid vertex name {0:?}")]
    InvalidVertex(String),
    #[error("apex {0} is already a vertex of the complex")]
    ApexPresent(String),
    #[error("simplex {0} is not in the complex")]
    AbsentSimplex(String),
    #[error("simplex {simplex} is not a free face ({cofaces} proper cofaces)")]
    NotFree { simplex: String, cofaces: usize },
    #[error("generator {0:?} is not covered by the map or presentation")]
    UnmappedGenerator(String),
    #[error("invalid generator name {0:?}")]
    InvalidGenerator(String),
    #[error("malformed link diagram: {0}")]
    MalformedDiagram(String),
    #[error("tietze move rejected: {0}")]
    RejectedMove(String),
    #[error("coincident points")]
    CoincidentPoints,
    #[error("point {0} lies outside the open unit disk")]
    OutsideDisk(String),
    #[error("angles sum to {0}, which is not below pi; no hyperbolic triangle")]
    NotHyperbolic(f64),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    OutOfRange(String),
    #[error("split rejected: {0}")]
    SplitRejected(String),
    #[error("cannot read {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
