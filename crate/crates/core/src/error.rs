use std::path::PathBuf;

use thiserror::Error;

/// Failure modes shared by the library and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty range: {0}")]
    EmptyRange(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("series is not a unit: constant term is zero")]
    NonUnit,
    #[error("unsupported eta quotient: {0}")]
    UnsupportedQuotient(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("catalogue error: {0}")]
    Catalogue(String),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("form at level {0} has complex multiplication; Sato-Tate equidistribution does not apply")]
    CmForm(u64),
    #[error("form at level {0} has no complex multiplication")]
    NotCm(u64),
    #[error("degenerate pair: both forms are level {0}")]
    DegeneratePair(u64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("malformed file {path}: {reason}")]
    Format { path: PathBuf, reason: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, reason: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
