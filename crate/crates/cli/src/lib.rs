//! Command-line front end: expression parser, equation catalog and reports.

pub mod catalog;
pub mod commands;
pub mod parse;
pub mod report;

pub use commands::{run_command, CommandOutput, Format};
