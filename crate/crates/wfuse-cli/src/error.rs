//! CLI error type with the exit-code discipline: 0 success, 1 check or data
//! failure, 2 usage error.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags, malformed config files, unknown keys. Exit code 2.
    Usage(String),
    /// Failed checks, unreachable targets, malformed data files. Exit code 1.
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Data(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<wfuse_core::Error> for CliError {
    fn from(e: wfuse_core::Error) -> CliError {
        CliError::Data(e.to_string())
    }
}
