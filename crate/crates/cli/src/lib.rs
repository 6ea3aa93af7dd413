//! Command-line front end for symmetry-constrained thermalization.
//!
//! Loads a JSON model config, sweeps (T₀, T) grids into CSV/JSON rows,
//! prints single-point reports and runs the demon-circuit checks.

pub mod config;
pub mod demon_check;
pub mod emit;
mod error;
pub mod sweep;

pub use error::CliError;
