use std::io;
use std::path::PathBuf;

use flagmat_core::VerificationReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Domain(#[from] flagmat_core::Error),
    #[error("verification failed")]
    Verification(VerificationReport),
}

impl CliError {
    /// `1` for failed checks and mathematical errors, `2` for usage, I/O and
    /// parse errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) | CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse(_) => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
