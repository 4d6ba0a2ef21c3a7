//! Scenario runs and duration sweeps for the cavity solvers.
//!
//! A run evaluates one reference protocol with the exact solver, builds its
//! shortcut (effective) mirrors from the adiabatic solution, and writes
//! trajectories, Moore functions, energies and a summary. A sweep repeats
//! the cheap parts of a run over a list of durations.

use std::path::PathBuf;

use thiserror::Error;

pub mod config;
pub mod output;
pub mod run;
pub mod sweep;

pub use config::RunConfig;
pub use run::{run, RunOptions, RunReport};
pub use sweep::{sweep_tau, SweepReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),

    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),

    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },

    #[error("cannot serialize summary: {0}")]
    Serialize(#[from] toml::ser::Error),

    #[error(transparent)]
    Solver(#[from] cavity_sta::Error),
}
