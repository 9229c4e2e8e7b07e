use polyflip::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// 1 for failed checks, 2 for bad input, 3 for capacity limits.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                Error::Capacity { .. } => 3,
                Error::Unreachable
                | Error::NotAMatroid(_)
                | Error::NotAGraphOracle(_)
                | Error::InvariantViolated { .. } => 1,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
