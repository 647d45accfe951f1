//! Command-line front end for `weightlab`: argument parsing, the JSON report
//! format, and the verification suites.

pub mod args;
pub mod commands;
pub mod document;
pub mod suites;

pub use args::{Cli, Command, Format};
pub use commands::{run, tolerance_from_env, CliError};
pub use document::{Document, Entry, GeneratorHead};
