//! Seeded, reproducible Monte Carlo experiments on top of the simulator:
//! single runs with trajectory export, collision-bound validation over mass
//! ratios, adiabatic-drift scans over a ladder of vertical-speed scales,
//! and straight-wedge oracle checks.
//!
//! Randomness comes from ChaCha8 with the run seed; trial `i` uses stream
//! `i` of the same seed, so results are independent of how trials are
//! scheduled across threads. Aggregation is ordered by trial index, which
//! makes outputs byte-identical for identical `(config, seed)`.

pub mod config;
pub mod output;
pub mod runner;
pub mod sampler;
pub mod stats;

pub use config::{ConfigError, ExperimentConfig, Format, InitialState, Mode, SamplerSpec};
pub use runner::{
    run_adiabatic_scan, run_bound_check, run_simulate, run_wedge_oracle, AdiabaticRow,
    AdiabaticScanReport, BoundCheckReport, BoundCheckRow, SimulateReport, WedgeOracleReport,
};

use core::fmt;

/// Errors surfaced by the experiment harness.
#[derive(Debug)]
pub enum HarnessError {
    Config(ConfigError),
    Sim(crate::Error),
    Io(std::io::Error),
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Config(e) => write!(f, "{e}"),
            HarnessError::Sim(e) => write!(f, "simulation error: {e}"),
            HarnessError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<ConfigError> for HarnessError {
    fn from(e: ConfigError) -> Self {
        HarnessError::Config(e)
    }
}

impl From<crate::Error> for HarnessError {
    fn from(e: crate::Error) -> Self {
        HarnessError::Sim(e)
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e)
    }
}
