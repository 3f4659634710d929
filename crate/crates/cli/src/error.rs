use std::path::PathBuf;

use serde_json::json;

/// A failed invocation, carrying its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] equiloc_core::Error),

    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },

    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Check(String),
}

impl CliError {
    /// `ParseError` for unreadable input, the core kind otherwise.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } | CliError::Json { .. } | CliError::Input(_) => "ParseError",
            CliError::Check(_) => "CheckFailed",
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.kind() == "ParseError" {
            2
        } else {
            1
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}
