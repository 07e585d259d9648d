//! CLI error type with the exit-code mapping.

use std::fmt;

/// Exit code 2: configuration or IO problems (message names the field or
/// path). Verdict failures are not errors; commands report them through
/// their boolean outcome and exit code 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Core(circumfeas_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<circumfeas_core::Error> for CliError {
    fn from(e: circumfeas_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn io(context: &str, e: std::io::Error) -> Self {
        CliError::Io(format!("{context}: {e}"))
    }

    pub fn exit_code(&self) -> i32 {
        2
    }
}
