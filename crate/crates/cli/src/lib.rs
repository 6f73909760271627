//! Command-line front end for the `polqpdf` crate.

pub mod args;
pub mod commands;
pub mod csv;
pub mod error;
pub mod presets;
pub mod svg;

pub use args::{Cli, Command, Options};
pub use error::{CliError, CliResult};
