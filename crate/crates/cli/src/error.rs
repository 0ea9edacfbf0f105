use std::io;
use std::path::PathBuf;

/// Command failure, mapped onto a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Core(#[from] blocksum_core::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("not converged: {0}")]
    NotConverged(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Core(_) | CliError::Invalid(_) => 2,
            CliError::NotConverged(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
