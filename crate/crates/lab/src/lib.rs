//! IO, formats and the command-line driver around `alcove-core`.

pub mod cli;
pub mod formats;
pub mod svg;

pub use cli::{run, Outcome, RunConfig};
