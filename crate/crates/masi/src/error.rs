use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID_INPUT: i32 = 2;
    pub const NOT_REGULAR: i32 = 3;
    pub const SPECTRUM_MISMATCH: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("spectrum has {found} entries but the first subsystem has dimension {expected}")]
    SpectrumMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Core(#[from] masi_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(masi_core::Error::NotRegular(_)) => exit::NOT_REGULAR,
            CliError::SpectrumMismatch { .. } => exit::SPECTRUM_MISMATCH,
            _ => exit::INVALID_INPUT,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
