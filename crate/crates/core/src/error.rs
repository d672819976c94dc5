use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = BoostError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum BoostError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("parse error at line {line}{}: {message}", column.map(|c| format!(", column {c}")).unwrap_or_default())]
    Parse {
        line: usize,
        column: Option<usize>,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl BoostError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        BoostError::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BoostError::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the input data rather than the caller's
    /// configuration.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            BoostError::Schema(_) | BoostError::Parse { .. } | BoostError::Io { .. }
        )
    }
}
