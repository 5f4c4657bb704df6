//! Experiment configuration: defaults, TOML config files, validation.

use core::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{DumbbellParams, PhysState};

/// What the harness should run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// One explicit run with full trajectory export.
    Simulate,
    /// Monte Carlo validation of the collision-count bound over mass ratios.
    BoundCheck,
    /// Adiabatic-invariant drift scan over a delta ladder.
    AdiabaticScan,
    /// Straight-wedge reflection counts against the unfolding oracle.
    WedgeOracle,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Simulate => "simulate",
            Mode::BoundCheck => "bound-check",
            Mode::AdiabaticScan => "adiabatic-scan",
            Mode::WedgeOracle => "wedge-oracle",
        };
        f.write_str(s)
    }
}

impl FromStr for Mode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simulate" => Ok(Mode::Simulate),
            "bound-check" => Ok(Mode::BoundCheck),
            "adiabatic-scan" => Ok(Mode::AdiabaticScan),
            "wedge-oracle" => Ok(Mode::WedgeOracle),
            other => Err(ConfigError::new(
                "mode",
                format!(
                    "unknown mode `{other}`; expected simulate | bound-check | \
                     adiabatic-scan | wedge-oracle"
                ),
            )),
        }
    }
}

/// Output table format.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("csv")
    }
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            other => Err(ConfigError::new(
                "format",
                format!("unknown format `{other}`; expected csv"),
            )),
        }
    }
}

/// Uniform sampling ranges for scattering initial conditions.
///
/// The default ensemble drops the dumbbell from twice the largest boundary
/// height with a broad spread of incoming velocities; inadmissible and
/// corner-aimed draws are rejected and redrawn.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplerSpec {
    /// Fixed initial height; `None` selects `2 * boundary_max` per ratio.
    pub y0: Option<f64>,
    pub phi: [f64; 2],
    pub y_dot: [f64; 2],
    pub phi_dot: [f64; 2],
}

impl Default for SamplerSpec {
    fn default() -> Self {
        Self {
            y0: None,
            phi: [0.0, std::f64::consts::TAU],
            y_dot: [-1.0, -0.1],
            phi_dot: [-5.0, 5.0],
        }
    }
}

/// Explicit initial state for `simulate` mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    pub y: f64,
    pub phi: f64,
    pub y_dot: f64,
    pub phi_dot: f64,
}

impl InitialState {
    pub fn to_phys(self) -> PhysState<f64> {
        PhysState::new(self.y, self.phi, self.y_dot, self.phi_dot)
    }
}

/// Annulus constants for the adiabatic sampler:
/// `c1 sqrt(delta) <= |phi0 - 3pi/2| <= c2 sqrt(delta)`.
pub const ADIABATIC_ANNULUS: (f64, f64) = (0.5, 2.0);

/// Full experiment description. Serializable both ways: the TOML config
/// file uses exactly this shape, and the metadata sidecar echoes it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub m1: f64,
    pub m2: f64,
    /// Mass ratios `m2/m1` for bound-check mode.
    pub ratios: Vec<f64>,
    /// Trials per ratio (bound-check), runs per rung (adiabatic-scan), or
    /// total trials (wedge-oracle).
    pub trials: usize,
    pub seed: u64,
    pub delta_ladder: Vec<f64>,
    pub out: PathBuf,
    pub format: Format,
    pub sampler: SamplerSpec,
    pub initial: Option<InitialState>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Simulate,
            m1: 1.0,
            m2: 1.0,
            ratios: vec![1.0, 2.0, 10.0, 100.0],
            trials: 1000,
            seed: 1,
            delta_ladder: vec![0.1, 0.05, 0.025],
            out: PathBuf::from("runs/out.csv"),
            format: Format::Csv,
            sampler: SamplerSpec::default(),
            initial: None,
        }
    }
}

/// Configuration diagnostic carrying the offending field name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error in `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

impl ExperimentConfig {
    /// Parse a TOML config file body.
    pub fn from_toml(body: &str) -> Result<Self, ConfigError> {
        toml::from_str(body).map_err(|e| ConfigError::new("config", e.to_string()))
    }

    pub fn params(&self) -> Result<DumbbellParams<f64>, ConfigError> {
        DumbbellParams::new(self.m1, self.m2).map_err(|e| ConfigError::new("m1/m2", e.to_string()))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::new("trials", "must be >= 1"));
        }
        let params = self.params()?;
        if self.out.as_os_str().is_empty() {
            return Err(ConfigError::new("out", "output path must not be empty"));
        }
        for (field, range) in [
            ("sampler.phi", self.sampler.phi),
            ("sampler.y_dot", self.sampler.y_dot),
            ("sampler.phi_dot", self.sampler.phi_dot),
        ] {
            if !(range[0].is_finite() && range[1].is_finite()) || range[0] > range[1] {
                return Err(ConfigError::new(
                    field,
                    "range must be finite and ordered [lo, hi]",
                ));
            }
        }
        match self.mode {
            Mode::Simulate => {
                let initial = self.initial.ok_or_else(|| {
                    ConfigError::new("initial", "simulate mode needs an initial state")
                })?;
                let s = initial.to_phys();
                if !s.y.is_finite()
                    || !s.phi.is_finite()
                    || !s.y_dot.is_finite()
                    || !s.phi_dot.is_finite()
                {
                    return Err(ConfigError::new("initial", "state must be finite"));
                }
                if !s.is_admissible(&params) {
                    return Err(ConfigError::new(
                        "initial",
                        "state is inadmissible: a mass is below the floor",
                    ));
                }
            }
            Mode::BoundCheck => {
                if self.ratios.is_empty() {
                    return Err(ConfigError::new("ratios", "must list at least one ratio"));
                }
                if self.ratios.iter().any(|r| !r.is_finite() || *r <= 0.0) {
                    return Err(ConfigError::new(
                        "ratios",
                        "every ratio must be finite and positive",
                    ));
                }
            }
            Mode::AdiabaticScan => {
                if self.delta_ladder.is_empty() {
                    return Err(ConfigError::new(
                        "delta_ladder",
                        "must list at least one delta",
                    ));
                }
                if self
                    .delta_ladder
                    .iter()
                    .any(|d| !d.is_finite() || *d <= 0.0 || *d >= 0.5)
                {
                    return Err(ConfigError::new(
                        "delta_ladder",
                        "every delta must lie in (0, 0.5)",
                    ));
                }
            }
            Mode::WedgeOracle => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_for_bound_check() {
        let cfg = ExperimentConfig {
            mode: Mode::BoundCheck,
            ..Default::default()
        };
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn diagnostics_carry_field_names() {
        let cfg = ExperimentConfig {
            mode: Mode::BoundCheck,
            trials: 0,
            ..Default::default()
        };
        let err = cfg.validate().unwrap_err();
        assert_eq!(err.field, "trials");

        let cfg = ExperimentConfig {
            mode: Mode::Simulate,
            initial: None,
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "initial");

        let cfg = ExperimentConfig {
            mode: Mode::Simulate,
            initial: Some(InitialState {
                y: 0.0,
                phi: std::f64::consts::FRAC_PI_2,
                y_dot: -1.0,
                phi_dot: 0.0,
            }),
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "initial");

        let cfg = ExperimentConfig {
            mode: Mode::AdiabaticScan,
            delta_ladder: vec![0.7],
            ..Default::default()
        };
        assert_eq!(cfg.validate().unwrap_err().field, "delta_ladder");
    }

    #[test]
    fn toml_round_trip() {
        let body = r#"
mode = "bound-check"
trials = 10
seed = 42
ratios = [1.0, 2.0]
out = "runs/b.csv"

[sampler]
phi_dot = [-3.0, 3.0]
"#;
        let cfg = ExperimentConfig::from_toml(body).unwrap();
        assert_eq!(cfg.mode, Mode::BoundCheck);
        assert_eq!(cfg.trials, 10);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.sampler.phi_dot, [-3.0, 3.0]);
        // Untouched fields keep their defaults.
        assert_eq!(cfg.sampler.y_dot, [-1.0, -0.1]);

        assert!(ExperimentConfig::from_toml("mode = \"bogus\"").is_err());
    }

    #[test]
    fn mode_strings() {
        for (s, m) in [
            ("simulate", Mode::Simulate),
            ("bound-check", Mode::BoundCheck),
            ("adiabatic-scan", Mode::AdiabaticScan),
            ("wedge-oracle", Mode::WedgeOracle),
        ] {
            assert_eq!(s.parse::<Mode>().unwrap(), m);
            assert_eq!(m.to_string(), s);
        }
        assert!("x".parse::<Mode>().is_err());
    }
}
