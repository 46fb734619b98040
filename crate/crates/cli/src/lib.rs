//! Command-line front end: the system expression language, run
//! configuration, subcommands and staircase plots.

pub mod commands;
pub mod config;
pub mod error;
pub mod eval;
pub mod expr;
pub mod svg;

pub use commands::{run, Command};
pub use config::{RunConfig, Settings};
pub use error::CliError;
