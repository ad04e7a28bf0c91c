//! Command-line front end for `hamcube`: file formats, reports and the
//! subcommand implementations behind the `hamcube` binary.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{exit, Outcome};
