use qsl_core::QslError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] QslError),
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Io(std::io::Error::other(format!("{other:?}"))),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => exit::CONFIG,
            CliError::Core(QslError::BoundViolation { .. }) => exit::BOUND_VIOLATION,
            CliError::Io(_) | CliError::Core(_) => exit::OTHER,
        }
    }
}

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const BOUND_VIOLATION: i32 = 3;
    pub const INTEGRATION_FAILURES: i32 = 4;
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
