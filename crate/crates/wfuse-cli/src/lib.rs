//! Library surface of the `wfuse` command-line tool.
//!
//! The binary in `main.rs` is a thin shell over [`commands`]; keeping the
//! command implementations here lets the integration and acceptance suites
//! drive them in-process.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod svg;

pub use error::CliError;
