//! File formats and commands behind the `superext` binary.

pub mod commands;
pub mod format;

use serde_json::Value;

/// Exit codes: 1 parse or IO, 2 semantic (a predicate fails), 3 verification failed.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Io(String),
    Parse(String),
    Semantic(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Semantic(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Semantic(_) => "semantic",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Parse(m) | CliError::Semantic(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} error: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<superext::Error> for CliError {
    fn from(e: superext::Error) -> Self {
        use superext::Error as E;
        match e {
            E::Basis(_) | E::Shape(_) | E::DuplicateBracket { .. } => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Semantic(e.to_string()),
        }
    }
}

/// Result of a command: JSON report for stdout, one-line summary for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
    pub summary: String,
}

impl Outcome {
    pub fn ok(report: Value, summary: impl Into<String>) -> Self {
        Outcome {
            code: 0,
            report,
            summary: summary.into(),
        }
    }

    pub fn from_error(e: &CliError) -> Self {
        Outcome {
            code: e.code(),
            report: serde_json::json!({"ok": false, "error": e.kind(), "message": e.message()}),
            summary: e.to_string(),
        }
    }
}
