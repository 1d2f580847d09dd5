use std::fmt;

use soliton_discord::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PHYSICS: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Lib(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Validation(_) | CliError::Io(_) => EXIT_VALIDATION,
            CliError::Lib(e) => match e {
                Error::Config(_) => EXIT_USAGE,
                Error::UnsupportedRegime { .. } | Error::UnsupportedCoherence { .. } => EXIT_UNSUPPORTED,
                _ => EXIT_PHYSICS,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}
