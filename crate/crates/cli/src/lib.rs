//! Library side of the `spinflux` command-line tool: configuration
//! resolution, execution, and deterministic rendering. The binary in
//! `main.rs` is a thin argument-parsing wrapper over [`run::execute_and_write`].

pub mod config;
pub mod output;
pub mod run;

pub use config::{PartialConfig, RunConfig};
pub use run::{execute, execute_and_write};

/// CLI-level failures, mapped to process exit codes: configuration problems
/// (including unusable paths) exit with 2, numerical failures with 3.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}
