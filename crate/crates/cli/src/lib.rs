//! Command-line front end: `fidelity`, `bound`, `sweep`, `verify`, `gmodel`.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod sweep;

pub use args::Cli;
pub use commands::{execute, Output};
pub use error::{CliError, Exit};
