//! CLI error kinds and their exit codes.

use std::fmt;

/// Exit codes: 2 usage, 3 input-parse, 4 degenerate-input, 5 internal.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Degenerate(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Degenerate(_) => 4,
            CliError::Internal(_) => 5,
        }
    }

    /// Stable machine-parsable code printed in front of the message.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input-parse",
            CliError::Degenerate(_) => "degenerate-input",
            CliError::Internal(_) => "internal",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let message = match self {
            CliError::Usage(m)
            | CliError::Input(m)
            | CliError::Degenerate(m)
            | CliError::Internal(m) => m,
        };
        write!(f, "error[{}]: {message}", self.code())
    }
}

impl From<wavescale::Error> for CliError {
    fn from(err: wavescale::Error) -> Self {
        match err {
            wavescale::Error::InvalidArgument(m) => CliError::Usage(m),
            wavescale::Error::InsufficientLevels { required, actual } => CliError::Usage(format!(
                "need at least {required} levels, got {actual}"
            )),
            wavescale::Error::DegenerateInput(m) => CliError::Degenerate(m),
            wavescale::Error::Internal(m) => CliError::Internal(m),
        }
    }
}
