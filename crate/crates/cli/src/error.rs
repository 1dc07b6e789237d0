use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fibertorsion::Error),

    #[error("cannot access {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("invalid manifest: {0}")]
    Manifest(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for a failed theorem hypothesis, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_hypothesis() => 2,
            _ => 1,
        }
    }
}
