use std::io;
use std::path::PathBuf;

/// Everything the command-line front end can fail with.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or flag combinations.
    #[error("{0}")]
    Invalid(String),
    /// Input file content that cannot be used.
    #[error("{path}: line {line}: {message}")]
    Input {
        /// File being read.
        path: PathBuf,
        /// One-based line number.
        line: u64,
        /// What is wrong with it.
        message: String,
    },
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: io::Error,
    },
    /// Error from the numeric core.
    #[error(transparent)]
    Core(#[from] ddm_core::Error),
    /// A model file that does not parse.
    #[error("{path}: {source}")]
    Model {
        /// File being read.
        path: PathBuf,
        /// Parse failure.
        source: crate::model_io::ModelFormatError,
    },
}

impl CliError {
    /// Process exit status: 2 for invalid usage, configuration or input, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Input { .. } | CliError::Model { .. } => 2,
            CliError::Core(ddm_core::Error::Config(_)) => 2,
            CliError::Core(_) | CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
