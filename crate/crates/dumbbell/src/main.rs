use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use dumbbell::harness::output::{self, Report};
use dumbbell::harness::{
    config::InitialState, runner, ConfigError, ExperimentConfig, HarnessError, Mode,
};

/// Event-driven bouncing-dumbbell experiments.
///
/// Exit codes: 0 all assertions pass, 1 a checked claim was violated
/// (collision bound exceeded or oracle mismatch), 2 configuration error.
#[derive(Parser, Debug)]
#[command(name = "dumbbell", version, about)]
struct Cli {
    /// Experiment mode: simulate | bound-check | adiabatic-scan | wedge-oracle.
    #[arg(long)]
    mode: Option<String>,

    /// TOML config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,

    /// First mass.
    #[arg(long)]
    m1: Option<f64>,

    /// Second mass.
    #[arg(long)]
    m2: Option<f64>,

    /// Comma-separated mass ratios m2/m1 for bound-check mode.
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<f64>>,

    /// Trials per ratio / runs per rung / total trials, by mode.
    #[arg(long)]
    trials: Option<usize>,

    /// Seed of the portable generator (ChaCha8; trial i = stream i).
    #[arg(long)]
    seed: Option<u64>,

    /// Comma-separated vertical-speed scales for adiabatic-scan mode.
    #[arg(long, value_delimiter = ',')]
    delta_ladder: Option<Vec<f64>>,

    /// Output table path; sidecar files are written next to it.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format (csv).
    #[arg(long)]
    format: Option<String>,

    /// Initial state for simulate mode, as "y,phi,y_dot,phi_dot".
    #[arg(long)]
    initial: Option<String>,
}

fn parse_initial(raw: &str) -> Result<InitialState, ConfigError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(ConfigError::new(
            "initial",
            "expected four comma-separated numbers: y,phi,y_dot,phi_dot",
        ));
    }
    let mut vals = [0.0f64; 4];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .parse::<f64>()
            .map_err(|_| ConfigError::new("initial", format!("`{part}` is not a number")))?;
    }
    Ok(InitialState {
        y: vals[0],
        phi: vals[1],
        y_dot: vals[2],
        phi_dot: vals[3],
    })
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let body = std::fs::read_to_string(path).map_err(|e| {
                ConfigError::new("config", format!("cannot read {}: {e}", path.display()))
            })?;
            ExperimentConfig::from_toml(&body)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(mode) = &cli.mode {
        cfg.mode = mode.parse()?;
    } else if cli.config.is_none() {
        return Err(ConfigError::new("mode", "missing --mode (or --config)"));
    }
    if let Some(m1) = cli.m1 {
        cfg.m1 = m1;
    }
    if let Some(m2) = cli.m2 {
        cfg.m2 = m2;
    }
    if let Some(ratios) = &cli.ratios {
        cfg.ratios = ratios.clone();
    }
    if let Some(trials) = cli.trials {
        cfg.trials = trials;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(ladder) = &cli.delta_ladder {
        cfg.delta_ladder = ladder.clone();
    }
    if let Some(out) = &cli.out {
        cfg.out = out.clone();
    }
    if let Some(format) = &cli.format {
        cfg.format = format.parse()?;
    }
    if let Some(initial) = &cli.initial {
        cfg.initial = Some(parse_initial(initial)?);
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Run the configured experiment; `Ok(true)` means every checked claim held.
fn run(cfg: &ExperimentConfig) -> Result<bool, HarnessError> {
    match cfg.mode {
        Mode::Simulate => {
            let report = runner::run_simulate(cfg)?;
            let files = output::write_report(cfg, &Report::Simulate(&report))?;
            println!(
                "simulate: {} bounce(s), termination {}, relative energy drift {:.3e}",
                report.outcome.collision_count,
                output::termination_label(report.outcome.termination),
                report.energy_drift,
            );
            for f in files {
                println!("  wrote {}", f.display());
            }
            Ok(true)
        }
        Mode::BoundCheck => {
            let report = runner::run_bound_check(cfg)?;
            let files = output::write_report(cfg, &Report::BoundCheck(&report))?;
            for r in &report.rows {
                println!(
                    "ratio {:>8}: gamma {:.5}, bound {}, max observed {}, violations {}",
                    r.ratio, r.gamma, r.n_gamma, r.max_observed, r.violations,
                );
            }
            for f in files {
                println!("  wrote {}", f.display());
            }
            Ok(!report.any_violation())
        }
        Mode::AdiabaticScan => {
            let report = runner::run_adiabatic_scan(cfg)?;
            let files = output::write_report(cfg, &Report::AdiabaticScan(&report))?;
            for r in &report.rows {
                println!(
                    "delta {:>6}: median drift {:.5e}, mean bounces {:.1}, resample rate {:.3}",
                    r.delta, r.median_drift, r.mean_bounces, r.resample_rate,
                );
            }
            if let (Some(d), Some(c)) = (report.drift_exponent, report.count_exponent) {
                println!(
                    "fitted exponents: drift {:.3} (vs 0.5), bounce count {:.3} (vs -1); \
                     drift monotone: {}",
                    d,
                    c,
                    report.drift_monotone.unwrap_or(false),
                );
            }
            for f in files {
                println!("  wrote {}", f.display());
            }
            Ok(true)
        }
        Mode::WedgeOracle => {
            let report = runner::run_wedge_oracle(cfg)?;
            let files = output::write_report(cfg, &Report::WedgeOracle(&report))?;
            println!(
                "wedge oracle: {} trials, {} mismatches, max count {}, within bound: {}",
                report.trials, report.mismatches, report.max_count, report.all_within_bound,
            );
            for f in files {
                println!("  wrote {}", f.display());
            }
            Ok(report.mismatches == 0 && report.all_within_bound)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(HarnessError::Config(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
