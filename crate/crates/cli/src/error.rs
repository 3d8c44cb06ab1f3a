use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A configuration value failed validation.
    #[error("invalid `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Compute(#[from] qtspin::Error),
}

impl CliError {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Config {
            key: key.into(),
            reason: reason.into(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn csv(path: &Path, err: csv::Error) -> Self {
        match err.into_kind() {
            csv::ErrorKind::Io(source) => CliError::io(path, source),
            other => CliError::Usage(format!("{}: malformed CSV: {other:?}", path.display())),
        }
    }

    /// 2 for configuration and usage errors, 3 for I/O, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } | CliError::Usage(_) => 2,
            CliError::Compute(qtspin::Error::InvalidParameter { .. })
            | CliError::Compute(qtspin::Error::GridTooCoarse { .. }) => 2,
            CliError::Io { .. } => 3,
            CliError::Compute(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
