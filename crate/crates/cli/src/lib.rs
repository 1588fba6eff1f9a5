//! Command-line front end: the surface language, JSON surface files,
//! commands and the randomized census.

pub mod app;
pub mod census;
pub mod commands;
pub mod error;
pub mod parser;
pub mod report;
pub mod surface;

pub use app::{run, RunResult};
pub use error::CliError;
