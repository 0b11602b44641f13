use std::fmt;

use thiserror::Error;

/// Syntax error with a 1-based column (and line, when reading files).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub message: String,
    pub column: usize,
    pub line: Option<usize>,
}

impl ParseError {
    pub fn new(message: impl Into<String>, column: usize) -> Self {
        ParseError {
            message: message.into(),
            column,
            line: None,
        }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}, column {}: {}", self.column, self.message),
            None => write!(f, "column {}: {}", self.column, self.message),
        }
    }
}

/// Which model change operation failed to find a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeKind {
    Eviction,
    Reception,
}

impl fmt::Display for ChangeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChangeKind::Eviction => "eviction",
            ChangeKind::Reception => "reception",
        })
    }
}

/// The candidate family for an eviction or reception was empty.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Incompatibility {
    pub kind: ChangeKind,
    pub target: String,
    pub explanation: String,
    /// Symbolic systems attach a concrete witness (a model or an improving candidate).
    pub witness: Option<String>,
}

impl fmt::Display for Incompatibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} target {} has no candidate: {}",
            self.kind, self.target, self.explanation
        )?;
        if let Some(w) = &self.witness {
            write!(f, " (witness: {w})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe mismatch: expected {expected} models, found {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("{what} exceeds bound: {size} > {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("incompatible: {0}")]
    Incompatible(Box<Incompatibility>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("catalog witness for {set} denotes {actual}")]
    WitnessMismatch { set: String, actual: String },

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

impl Error {
    pub fn incompatible(inc: Incompatibility) -> Self {
        Error::Incompatible(Box::new(inc))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
