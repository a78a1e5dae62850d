use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input not found: {}", .0.display())]
    NotFound(PathBuf),

    #[error("io error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    /// Ragged rows, missing columns and similar layout problems in text input.
    #[error("malformed input: {0}")]
    Structure(String),

    #[error("bad tensor file format: {0}")]
    Format(String),

    #[error("tensor payload size mismatch: expected {expected} bytes, found {found}")]
    Size { expected: u64, found: u64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("split error: {0}")]
    Split(String),

    #[error("pairing error: {0}")]
    Pairing(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("non-finite value at flat index {0}")]
    NonFinite(usize),

    #[error("unknown dataset: {0}")]
    UnknownDataset(String),

    /// An external generator command could not be run or exited unsuccessfully.
    #[error("external command failed: {0}")]
    External(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        let path = path.into();
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::NotFound(path)
        } else {
            Error::Io { path, source }
        }
    }

    /// Process exit code: 2 input, 3 shape/contract, 4 numeric/degenerate.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::NotFound(_)
            | Error::Io { .. }
            | Error::Parse { .. }
            | Error::Structure(_)
            | Error::Format(_)
            | Error::Size { .. }
            | Error::UnknownDataset(_)
            | Error::External(_)
            | Error::Json(_) => 2,
            Error::Shape(_) | Error::Split(_) | Error::Pairing(_) | Error::Parameter(_) => 3,
            Error::Degenerate(_) | Error::NonFinite(_) => 4,
        }
    }

    /// Short machine-readable kind tag used in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotFound(_) => "not_found",
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::Structure(_) => "structure",
            Error::Format(_) => "format",
            Error::Size { .. } => "size",
            Error::Shape(_) => "shape",
            Error::Split(_) => "split",
            Error::Pairing(_) => "pairing",
            Error::Parameter(_) => "parameter",
            Error::Degenerate(_) => "degenerate",
            Error::NonFinite(_) => "non_finite",
            Error::UnknownDataset(_) => "unknown_dataset",
            Error::External(_) => "external",
            Error::Json(_) => "json",
        }
    }
}
