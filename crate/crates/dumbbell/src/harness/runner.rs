//! Experiment runners. Each runner validates its configuration, executes
//! trials in parallel (deterministically, via per-trial RNG streams and
//! index-ordered aggregation), and returns a report for the output writer.

use rayon::prelude::*;

use crate::analysis::{
    collision_bound, wedge_reflection_count, wedge_unfolding_count, AdiabaticTrace,
};
use crate::error::Error;
use crate::geometry::BoundaryBranch;
use crate::model::kinetic_energy;
use crate::simulate::{scatter, Limits, ScatterOutcome, Termination};

use super::config::{ExperimentConfig, Mode, ADIABATIC_ANNULUS};
use super::sampler::{sample_adiabatic, sample_scatter_state, sample_wedge, trial_rng};
use super::stats;
use super::{ConfigError, HarnessError};

fn expect_mode(cfg: &ExperimentConfig, mode: Mode) -> Result<(), ConfigError> {
    if cfg.mode != mode {
        return Err(ConfigError::new(
            "mode",
            format!("runner expects `{mode}`, config says `{}`", cfg.mode),
        ));
    }
    Ok(())
}

/// Report of a single explicit run.
#[derive(Clone, Debug)]
pub struct SimulateReport {
    pub params: crate::Params,
    pub outcome: ScatterOutcome<f64>,
    /// Relative kinetic-energy drift across the whole run.
    pub energy_drift: f64,
    pub invariant_initial: Option<f64>,
    pub invariant_final: Option<f64>,
    pub invariant_max_drift: Option<f64>,
}

pub fn run_simulate(cfg: &ExperimentConfig) -> Result<SimulateReport, HarnessError> {
    expect_mode(cfg, Mode::Simulate)?;
    cfg.validate()?;
    let params = cfg.params()?;
    let initial = cfg
        .initial
        .expect("validated simulate config has an initial state")
        .to_phys();
    let limits = Limits::for_params(&params);
    let outcome = scatter(&params, &initial, &limits)?;
    let k0 = kinetic_energy(&params, &initial);
    let k1 = kinetic_energy(&params, &outcome.final_state);
    let energy_drift = ((k1 - k0) / k0.max(f64::MIN_POSITIVE)).abs();
    let trace = AdiabaticTrace::from_run(&params, &outcome).ok();
    Ok(SimulateReport {
        params,
        energy_drift,
        invariant_initial: trace.as_ref().map(|t| t.initial),
        invariant_final: trace.as_ref().map(|t| t.final_value),
        invariant_max_drift: trace.as_ref().map(|t| t.max_drift),
        outcome,
    })
}

/// Per-ratio summary of the collision-bound validation.
#[derive(Clone, Copy, Debug)]
pub struct BoundCheckRow {
    pub ratio: f64,
    pub trials: usize,
    pub gamma: f64,
    pub n_gamma: usize,
    pub max_observed: usize,
    /// Trials whose collision count exceeded the bound. Must be zero.
    pub violations: usize,
    pub corner_hits: usize,
    pub horizon_exceeded: usize,
}

#[derive(Clone, Debug)]
pub struct BoundCheckReport {
    pub rows: Vec<BoundCheckRow>,
}

impl BoundCheckReport {
    pub fn any_violation(&self) -> bool {
        self.rows.iter().any(|r| r.violations > 0)
    }
}

pub fn run_bound_check(cfg: &ExperimentConfig) -> Result<BoundCheckReport, HarnessError> {
    expect_mode(cfg, Mode::BoundCheck)?;
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.ratios.len());
    for (ri, &ratio) in cfg.ratios.iter().enumerate() {
        let params = crate::Params::from_mass_ratio(ratio)?;
        let n_gamma = collision_bound(&params)?;
        let limits = Limits::for_params(&params);
        let spec = cfg.sampler.clone();
        let seed = cfg.seed;
        let base = (ri * cfg.trials) as u64;
        let results: Vec<(usize, Termination)> = (0..cfg.trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(seed, base + i as u64);
                let s = sample_scatter_state(&params, &spec, &mut rng);
                let out = scatter(&params, &s, &limits).expect("sampled state is admissible");
                (out.collision_count, out.termination)
            })
            .collect();
        let mut row = BoundCheckRow {
            ratio,
            trials: cfg.trials,
            gamma: params.wedge_angle(),
            n_gamma,
            max_observed: 0,
            violations: 0,
            corner_hits: 0,
            horizon_exceeded: 0,
        };
        for (count, termination) in results {
            row.max_observed = row.max_observed.max(count);
            if count > n_gamma {
                row.violations += 1;
            }
            match termination {
                Termination::CornerHit => row.corner_hits += 1,
                Termination::HorizonExceeded => row.horizon_exceeded += 1,
                _ => {}
            }
        }
        rows.push(row);
    }
    Ok(BoundCheckReport { rows })
}

/// Per-rung summary of the adiabatic drift scan.
#[derive(Clone, Copy, Debug)]
pub struct AdiabaticRow {
    pub delta: f64,
    pub epsilon: f64,
    pub runs: usize,
    /// Rejected draws across all runs of the rung.
    pub resamples: usize,
    pub resample_rate: f64,
    pub median_drift: f64,
    pub mean_drift: f64,
    pub p90_drift: f64,
    pub max_drift: f64,
    pub mean_bounces: f64,
    /// Largest number of heavy-mass contacts seen in a single run.
    pub max_mass2_events: usize,
    pub non_escaped: usize,
}

#[derive(Clone, Debug)]
pub struct AdiabaticScanReport {
    pub rows: Vec<AdiabaticRow>,
    /// Fitted exponent of median drift against delta (expected near 1/2).
    pub drift_exponent: Option<f64>,
    /// Fitted exponent of mean bounce count against delta (expected near -1).
    pub count_exponent: Option<f64>,
    /// Median drift decreases together with delta.
    pub drift_monotone: Option<bool>,
    pub annulus: (f64, f64),
}

struct AdiabaticTrial {
    drift: f64,
    bounces: usize,
    mass2_events: usize,
    resamples: usize,
    escaped: bool,
}

fn adiabatic_trial(delta: f64, seed: u64, stream: u64) -> AdiabaticTrial {
    let mut rng = trial_rng(seed, stream);
    let mut resamples = 0usize;
    for _ in 0..1000 {
        let (draw, rejected) = sample_adiabatic(delta, ADIABATIC_ANNULUS, &mut rng);
        resamples += rejected;
        let limits = Limits::for_params(&draw.params);
        let outcome = scatter(&draw.params, &draw.initial, &limits)
            .expect("sampled adiabatic state is admissible");
        let first_is_light = outcome
            .events
            .first()
            .is_some_and(|ev| ev.mass_hit == BoundaryBranch::Mass1);
        if !first_is_light {
            resamples += 1;
            continue;
        }
        let trace =
            AdiabaticTrace::from_run(&draw.params, &outcome).expect("run has at least one event");
        let mass2_events = outcome
            .events
            .iter()
            .filter(|ev| ev.mass_hit == BoundaryBranch::Mass2)
            .count();
        return AdiabaticTrial {
            drift: trace.total_drift(),
            bounces: outcome.collision_count,
            mass2_events,
            resamples,
            escaped: outcome.termination == Termination::Escaped,
        };
    }
    unreachable!("adiabatic sampler failed to produce a compliant run");
}

pub fn run_adiabatic_scan(cfg: &ExperimentConfig) -> Result<AdiabaticScanReport, HarnessError> {
    expect_mode(cfg, Mode::AdiabaticScan)?;
    cfg.validate()?;
    let mut rows = Vec::with_capacity(cfg.delta_ladder.len());
    for (di, &delta) in cfg.delta_ladder.iter().enumerate() {
        let base = (di * cfg.trials) as u64;
        let seed = cfg.seed;
        let trials: Vec<AdiabaticTrial> = (0..cfg.trials)
            .into_par_iter()
            .map(|i| adiabatic_trial(delta, seed, base + i as u64))
            .collect();
        let drifts: Vec<f64> = trials.iter().map(|t| t.drift).collect();
        let bounces: Vec<f64> = trials.iter().map(|t| t.bounces as f64).collect();
        let resamples: usize = trials.iter().map(|t| t.resamples).sum();
        rows.push(AdiabaticRow {
            delta,
            epsilon: delta * delta,
            runs: cfg.trials,
            resamples,
            resample_rate: resamples as f64 / (cfg.trials + resamples) as f64,
            median_drift: stats::median(&drifts),
            mean_drift: stats::mean(&drifts),
            p90_drift: stats::quantile(&drifts, 0.9),
            max_drift: drifts.iter().cloned().fold(0.0, f64::max),
            mean_bounces: stats::mean(&bounces),
            max_mass2_events: trials.iter().map(|t| t.mass2_events).max().unwrap_or(0),
            non_escaped: trials.iter().filter(|t| !t.escaped).count(),
        });
    }

    let (drift_exponent, count_exponent, drift_monotone) = if rows.len() >= 2 {
        let drift_points: Vec<(f64, f64)> =
            rows.iter().map(|r| (r.delta, r.median_drift)).collect();
        let count_points: Vec<(f64, f64)> =
            rows.iter().map(|r| (r.delta, r.mean_bounces)).collect();
        let mut sorted = rows.clone();
        sorted.sort_by(|a, b| b.delta.partial_cmp(&a.delta).unwrap());
        let monotone = sorted
            .windows(2)
            .all(|w| w[1].median_drift < w[0].median_drift);
        (
            Some(stats::log_log_slope(&drift_points)),
            Some(stats::log_log_slope(&count_points)),
            Some(monotone),
        )
    } else {
        (None, None, None)
    };

    Ok(AdiabaticScanReport {
        rows,
        drift_exponent,
        count_exponent,
        drift_monotone,
        annulus: ADIABATIC_ANNULUS,
    })
}

/// Summary of the straight-wedge oracle comparison.
#[derive(Clone, Copy, Debug)]
pub struct WedgeOracleReport {
    pub trials: usize,
    /// Trials where the simulated count differed from the unfolding count.
    pub mismatches: usize,
    /// Draws rejected because the line passes through the apex.
    pub vertex_rejects: usize,
    pub max_count: usize,
    /// Every simulated count stayed at or below `ceil(pi / gamma)`.
    pub all_within_bound: bool,
}

pub fn run_wedge_oracle(cfg: &ExperimentConfig) -> Result<WedgeOracleReport, HarnessError> {
    expect_mode(cfg, Mode::WedgeOracle)?;
    cfg.validate()?;
    let seed = cfg.seed;
    let results: Vec<(bool, usize, bool, usize)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            let mut rejects = 0usize;
            loop {
                let (spec, start, dir) = sample_wedge(&mut rng);
                match (
                    wedge_reflection_count(&spec, start, dir),
                    wedge_unfolding_count(&spec, start, dir),
                ) {
                    (Ok(sim), Ok(unf)) => {
                        let ceiling = (std::f64::consts::PI / spec.gamma()).ceil() as usize;
                        return (sim == unf, sim, sim <= ceiling, rejects);
                    }
                    (Err(Error::OnVertex), _) | (_, Err(Error::OnVertex)) => {
                        rejects += 1;
                    }
                    (a, b) => panic!("wedge trial failed: {a:?} / {b:?}"),
                }
            }
        })
        .collect();
    let mut report = WedgeOracleReport {
        trials: cfg.trials,
        mismatches: 0,
        vertex_rejects: 0,
        max_count: 0,
        all_within_bound: true,
    };
    for (matched, count, within, rejects) in results {
        if !matched {
            report.mismatches += 1;
        }
        report.max_count = report.max_count.max(count);
        report.all_within_bound &= within;
        report.vertex_rejects += rejects;
    }
    Ok(report)
}
