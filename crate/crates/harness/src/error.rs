use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("bad csv in {path}: {reason}")]
    Csv { path: PathBuf, reason: String },

    #[error(transparent)]
    Numeric(#[from] dixmier_core::Error),
}

impl HarnessError {
    /// Process exit code: 2 for configuration and file problems, 3 for
    /// failures inside the numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Numeric(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    /// Reclassifies a core error raised while building inputs.
    pub(crate) fn config(e: dixmier_core::Error) -> Self {
        HarnessError::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
