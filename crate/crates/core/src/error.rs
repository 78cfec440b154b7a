use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("verification failed at {clause}: {detail}")]
    VerificationFailure { clause: String, detail: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    /// Process exit status used by the CLI: 1 verification, 2 invalid input, 3 resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailure { .. } => 1,
            Error::InvalidParameter(_) | Error::Parse { .. } => 2,
            Error::ResourceLimit(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
