use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("parse error at position {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },

    #[error("invalid group specification: {0}")]
    InvalidGamma(String),

    #[error("element is not in the group: {0}")]
    NotInGroup(String),

    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("roots do not lie in a common open half-space")]
    NotPointed,

    #[error("invalid irreducible label: {0}")]
    InvalidIrrep(String),

    #[error("parameters without values: {0}")]
    UnboundParameters(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("cache I/O: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
