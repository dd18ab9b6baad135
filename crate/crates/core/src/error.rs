use thiserror::Error;

/// Errors produced by the library and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A precision context or run configuration is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    /// A cache file failed validation. The whole file is rejected.
    #[error("cache rejected: {0}")]
    Cache(String),

    /// An evaluation did not reach its error target.
    #[error("no convergence: {0}")]
    Convergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
