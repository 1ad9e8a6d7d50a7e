//! Command logic behind the `rosette` binary.

pub mod commands;
mod error;
pub mod parse;
pub mod render;

pub use error::{CliError, CliResult};
