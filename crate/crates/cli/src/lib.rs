//! Command-line front end: quantum-index reports, index diagrams, refined
//! tropical counts, SVG figures, and the verification suite.

pub mod bench;
pub mod commands;
pub mod input;
pub mod report;
pub mod svg;
pub mod verify;

/// Errors carrying the process exit code: 2 for input problems, 3 for
/// numeric failures, 1 for a falsified verification claim.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError {
            message: msg.into(),
            exit_code: 2,
        }
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        CliError {
            message: msg.into(),
            exit_code: 3,
        }
    }

    pub fn verification(msg: impl Into<String>) -> Self {
        CliError {
            message: msg.into(),
            exit_code: 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}
