use thiserror::Error;

use crate::graph::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed graph: {0}")]
    Structural(String),

    #[error("graph not admissible: {report}")]
    NotAdmissible { report: ValidationReport },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} did not converge (residual {residual:.3e})")]
    NonConvergence { what: String, residual: f64 },

    #[error("retention of {requested} values exceeds the in-memory budget of {limit}; use streaming evolution")]
    MemoryBudget { requested: usize, limit: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code class: 1 I/O, 2 validation, 3 numerical.
    /// (Exit code 4, check failure, is decided by the caller from reports.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) => 1,
            Error::Parse { .. }
            | Error::Structural(_)
            | Error::NotAdmissible { .. }
            | Error::InvalidParameter(_)
            | Error::DimensionMismatch { .. } => 2,
            Error::NonConvergence { .. } | Error::MemoryBudget { .. } | Error::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
