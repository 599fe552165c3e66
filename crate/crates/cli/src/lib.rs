//! Library surface of the command-line tool, split from the binary so the
//! commands are directly testable.

pub mod commands;
pub mod format;

pub use commands::{CliError, CliResult};
