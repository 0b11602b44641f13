use std::fmt;
use std::process::ExitCode;

use bcm_core::{Error, Incompatibility, ParseError};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(String),
    Bound(String),
    Incompatible(Box<Incompatibility>),
    Other(String),
}

impl CliError {
    pub fn code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) | CliError::Other(_) => 1,
            CliError::Incompatible(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Bound(_) => 4,
        })
    }

    pub fn parse_in(what: &str, e: ParseError) -> CliError {
        CliError::Parse(format!("{what}: {e}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(m) => write!(f, "parse error in {m}"),
            CliError::Bound(m) => write!(f, "bound exceeded: {m}"),
            CliError::Incompatible(i) => write!(f, "incompatible: {i}"),
            CliError::Other(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => CliError::Parse(format!("input: {p}")),
            Error::BoundExceeded { .. } => CliError::Bound(e.to_string().replace(" exceeds bound", "")),
            Error::Incompatible(i) => CliError::Incompatible(i),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
