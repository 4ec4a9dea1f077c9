//! Spec parsing, command dispatch and report rendering for the `rinehart` binary.

pub mod commands;
pub mod report;
pub mod spec;

pub use commands::{prepare_spec, run, Command, Overrides};
pub use report::{Report, SCHEMA_VERSION};
pub use spec::SpecFile;
