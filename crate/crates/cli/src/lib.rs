//! File formats, sweep artifacts and subcommands for the `blocksum` binary.

pub mod commands;
pub mod error;
pub mod format;
pub mod sweep;

pub use error::{CliError, CliResult};
