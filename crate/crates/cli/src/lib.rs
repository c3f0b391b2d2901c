//! Library side of the `memfuzz` command-line tool: run configuration,
//! presets, CSV output and the subcommands.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod presets;

pub use error::{CliError, Result};
