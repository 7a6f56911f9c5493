//! Command-line front end for `foldcore`: folding, simulation, fold verification,
//! classification, bifurcation sweeps and Lyapunov estimates.

pub mod commands;
pub mod config;
pub mod error;

pub use config::{RunArgs, RunConfig};
pub use error::CliError;
