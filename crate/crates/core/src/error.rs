use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An integer-mode element left the configured magnitude window, or a
    /// machine operation overflowed.
    #[error("element out of bounds: {0}")]
    Bounds(String),

    #[error("coefficient overflow in {0}")]
    Overflow(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid subset pair: {0}")]
    InvalidPair(String),

    /// A configured search bound (enumeration size, exhaustive group order)
    /// would be exceeded.
    #[error("resource bound exceeded: {what} is {actual}, limit {limit}")]
    Resource {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// Evidence failed to re-verify. Carries a diagnostic dump.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Verification(_) => 1,
            Error::Precondition(_) | Error::InvalidPair(_) | Error::Config { .. } => 2,
            Error::Resource { .. } | Error::Bounds(_) | Error::Overflow(_) => 3,
            Error::Io { .. } | Error::Json(_) => 1,
        }
    }
}
