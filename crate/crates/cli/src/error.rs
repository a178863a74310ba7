use std::fmt;

use crate::wire::{ErrorBody, ErrorOut};

/// An input error with a machine-readable code; the process exits with 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn document(&self) -> ErrorOut {
        ErrorOut { error: ErrorBody { code: self.code.to_string(), message: self.message.clone() } }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<symbidisc_core::Error> for CliError {
    fn from(e: symbidisc_core::Error) -> Self {
        CliError::new(e.code(), e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new("io", e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        use serde_json::error::Category;
        let code = match e.classify() {
            Category::Data => "schema_violation",
            Category::Io => "io",
            Category::Syntax | Category::Eof => "malformed_json",
        };
        CliError::new(code, e.to_string())
    }
}
