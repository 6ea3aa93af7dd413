use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid config, {invariant} violated: {detail}")]
    Validation {
        invariant: &'static str,
        detail: String,
    },
    #[error("invalid --grid argument {arg:?}: {reason}")]
    GridArg { arg: String, reason: String },
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] stherm_core::Error),
    #[error("demon check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    /// 2 for configuration problems, 1 for everything raised after a valid config.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. }
            | CliError::Parse { .. }
            | CliError::Validation { .. }
            | CliError::GridArg { .. } => 2,
            _ => 1,
        }
    }
}
