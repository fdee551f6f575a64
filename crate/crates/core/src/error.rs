use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration request exceeds its configured cap.
    #[error("resource limit: {what} = {requested} exceeds cap {cap}")]
    Resource {
        what: &'static str,
        requested: u64,
        cap: u64,
    },
    /// A runtime self-check failed (a claimed uniqueness or bijection did not hold).
    #[error("internal verification failed: {0}")]
    Verification(String),
    /// Two floating-point quantities the continuous model treats as distinct compared equal.
    #[error("tie: {0}")]
    Tie(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn verification(msg: impl Into<String>) -> Self {
        Error::Verification(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
