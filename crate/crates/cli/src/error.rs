use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] subharm::Error),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },

    #[error("tolerance check failed: {0}")]
    Tolerance(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use subharm::Error as E;
        match self {
            Self::Tolerance(_) => 2,
            Self::Lib(E::NonConvergence { .. } | E::CountMismatch { .. }) => 2,
            Self::Lib(E::Parse { .. }) | Self::Config { .. } | Self::Usage(_) => 4,
            Self::Lib(_) => 3,
            Self::Io { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
