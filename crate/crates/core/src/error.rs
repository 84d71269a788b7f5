use thiserror::Error;

/// Errors raised by the engine. Every variant carries a human-readable detail.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("not a germ at the origin: {0}")]
    NotAGerm(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("zero direction")]
    ZeroDirection,
    #[error("direction does not lie in the hyperplane")]
    NotInHyperplane,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("outside catalog: {0}")]
    OutsideCatalog(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Stable machine-readable tag used in serialized error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InsufficientTruncation(_) => "insufficient_truncation",
            Error::NotAGerm(_) => "not_a_germ",
            Error::InvalidInput(_) => "invalid_input",
            Error::Degenerate(_) => "degenerate",
            Error::ZeroDirection => "zero_direction",
            Error::NotInHyperplane => "not_in_hyperplane",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse",
            Error::OutsideCatalog(_) => "outside_catalog",
            Error::Verification(_) => "verification",
        }
    }

    pub(crate) fn trunc(msg: impl Into<String>) -> Self {
        Error::InsufficientTruncation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
