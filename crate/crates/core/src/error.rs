use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the range where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not valid for the aggregate's current state.
    #[error("state error: {0}")]
    State(String),

    /// A geometric invariant (regularity, orientation, unit norm) does not hold.
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// The structure lacks the regularity an analysis expects.
    #[error("structure error: {0}")]
    Structure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
