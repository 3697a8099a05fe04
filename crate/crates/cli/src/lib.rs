//! Command-line front end of the compliance-control workbench.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;

pub use cli::Cli;
pub use error::{CliError, CliResult};
pub use manifest::{RunManifest, MANIFEST_NAME};
