use std::fmt;

use polyshape::Error;

/// Process exit codes. Standard output carries data; every non-zero code
/// comes with a diagnostic on standard error.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const IO: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const SIZE: u8 = 3;
    pub const DEGENERATE: u8 = 4;
    pub const CONVERGENCE: u8 = 5;
    pub const INFEASIBLE: u8 = 6;
    pub const VERIFY_FAILED: u8 = 7;
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self::new(exit::PARSE, message)
    }

    /// Maps a library error, prefixing the message with `context` (usually
    /// the file or field it came from).
    pub fn from_core(context: &str, err: Error) -> Self {
        let code = match err {
            Error::TooFewVertices { .. } | Error::NonFinite { .. } => exit::PARSE,
            Error::SizeMismatch { .. } => exit::SIZE,
            Error::DegeneratePolygon | Error::DuplicateConsecutiveVertices { .. } => {
                exit::DEGENERATE
            }
            Error::ConvergenceFailure { .. } => exit::CONVERGENCE,
            Error::TargetEigenvalueCollision { .. } | Error::ZeroCompetingEigenvalue => {
                exit::INFEASIBLE
            }
            _ => exit::IO,
        };
        Self::new(code, format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::new(exit::IO, err.to_string())
    }
}
