//! Command-line front end: catalog surveys, group choice numbers,
//! configuration detection, discharging and kernelization.

pub mod app;
pub mod cache;
pub mod input;
pub mod survey;

use thiserror::Error;

pub use app::{run, Cli};
pub use cache::parse_cache_line;

pub const EXIT_OK: i32 = 0;
/// A refutation, counterexample bundle or failed internal cross-check.
pub const EXIT_ANOMALY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// Budget exhausted or some records failed; the output is partial.
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Input(String),
}
