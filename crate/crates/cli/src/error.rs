use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config: {key} {msg}")]
    Range { key: &'static str, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("nothing to write")]
    Empty,

    #[error(transparent)]
    Core(#[from] wna_core::Error),

    #[error("thread pool: {0}")]
    Pool(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Configuration and usage problems exit with 2; anything else is a run
    /// failure.
    pub fn is_usage(&self) -> bool {
        matches!(self, CliError::Parse { .. } | CliError::Range { .. })
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
