//! Command-line front end: circuit documents, input specs and commands.

pub mod commands;
pub mod document;
pub mod error;
pub mod input;

pub use error::CliError;
