use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] zsl_core::Error),

    #[error("invalid value `{token}`: {message}")]
    Usage { token: String, message: String },

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },

    #[error("{path} is not a valid document: {source}")]
    Document { path: PathBuf, source: zsl_core::Error },

    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn usage(token: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Usage { token: token.into(), message: message.into() }
    }

    /// 2 for anything the user typed or supplied that does not parse, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } | CliError::Document { .. } => 2,
            CliError::Core(zsl_core::Error::Parse { .. }) => 2,
            _ => 1,
        }
    }
}
