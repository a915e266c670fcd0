use std::io;
use std::path::PathBuf;

use weyl_equidist_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(CoreError),
    #[error("the Galois action is not elliptic")]
    NotElliptic,
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{} invariant check(s) failed", .0.len())]
    Verify(Vec<String>),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::NotElliptic => 4,
            CliError::Io { .. } => 5,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NotElliptic => CliError::NotElliptic,
            CoreError::InvalidCartanType(s) => CliError::Parse(format!("invalid Cartan type: {s}")),
            other => CliError::Validation(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
