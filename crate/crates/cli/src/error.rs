use std::fmt;

use frobkit_core::Error;

use crate::expr::ParseError;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config, expression or types. Exit code 2.
    Usage(String),
    Parse(ParseError),
    /// A mathematical precondition failed. Exit code 1.
    Math(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => 2,
        }
    }

    /// Errors in user-written text are usage errors whatever module reports them.
    pub(crate) fn from_input(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::NotPrime(_) | Error::NoVariables | Error::InvalidWindow(_) => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Math(e),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(e) => write!(f, "parse error at {e}"),
            CliError::Math(e) => write!(f, "error: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}
