use std::fmt;
use std::process::ExitCode;

/// Failures reported by the command line, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable or malformed files, invalid models or states.
    Input(String),
    /// The numerics broke down on valid input.
    Numerical(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(1),
            CliError::Numerical(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "invalid input: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl From<symmono::Error> for CliError {
    fn from(e: symmono::Error) -> Self {
        match e {
            symmono::Error::Numerical(msg) => CliError::Numerical(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("I/O: {e}"))
    }
}
