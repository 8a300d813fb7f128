//! Problem files, command dispatch and output formatting for `chowkit-core`.

pub mod commands;
pub mod problem;

pub use commands::{run, Command, Metadata, Options, Outcome, PolymatroidOp};
pub use problem::ProblemFile;

/// Errors surfaced by the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] chowkit_core::Error),
}

impl CliError {
    /// Process exit status: 2 for violated preconditions (including invalid
    /// requests), 3 for indeterminate Monte Carlo outcomes, 4 for unreadable
    /// or malformed input, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        use chowkit_core::Error;
        match self {
            CliError::Parse { .. } | CliError::Input(_) => 4,
            CliError::Core(Error::Usage(_) | Error::Precondition(_)) => 2,
            CliError::Core(Error::Indeterminate(_)) => 3,
            CliError::Core(Error::Internal(_)) => 1,
        }
    }
}
