use std::path::PathBuf;

use crate::model::ValidationReport;

/// Errors raised by depth computations, file handling and rendering.
#[derive(Debug, thiserror::Error)]
pub enum DepthError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("sample too small: {0}")]
    TooSmall(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("incompatible samples: {0}")]
    Incompatible(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid data: {0}")]
    InvalidData(ValidationReport),

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl DepthError {
    /// Short machine-readable category, used by the CLI error payload.
    pub fn kind(&self) -> &'static str {
        match self {
            DepthError::InvalidParams(_) => "invalid_params",
            DepthError::TooSmall(_) => "too_small",
            DepthError::DimensionMismatch { .. } => "dimension_mismatch",
            DepthError::Incompatible(_) => "incompatible",
            DepthError::Unsupported(_) => "unsupported",
            DepthError::IndexOutOfRange { .. } => "index_out_of_range",
            DepthError::InvalidData(_) => "invalid_data",
            DepthError::Parse { .. } => "parse",
            DepthError::Io { .. } => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, DepthError>;
