use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the estimation, simulation and harness layers.
#[derive(Debug, Error)]
pub enum AlbError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("singular design: rank {rank} < dimension {dim}; {hint}")]
    Singular { rank: usize, dim: usize, hint: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse { row: usize, column: usize, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl AlbError {
    /// Bad input rather than a defect: configs, files and caller arguments.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, AlbError::DimensionMismatch { .. } | AlbError::Singular { .. })
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        AlbError::Contract(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        AlbError::Config { field: field.into(), message: message.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AlbError::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, AlbError>;
