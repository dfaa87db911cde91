//! Command implementations behind the `bellvol` binary.

pub mod commands;
pub mod record;
pub mod spec;
pub mod table;

pub use commands::{run, Cli, CliError, Command};
pub use record::RunRecord;
