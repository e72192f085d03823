use thiserror::Error;

/// Errors produced by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A computation needs the full element list of a group larger than the configured bound.
    #[error("enumeration bound exceeded: group order {order} is larger than the bound {bound}")]
    EnumerationBoundExceeded { order: u128, bound: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("subgroup is not normal")]
    NotNormal,

    /// Arithmetic or structural precondition of an operation failed.
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("parse error at position {position} near `{token}`: {message}")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },

    /// A consistency check that should hold by construction failed.
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("operands belong to different groups")]
    GroupMismatch,

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
