//! Harness-level integration tests: reproducibility, file layout, and the
//! documented experiment behaviors.

use std::fs;

use dumbbell::harness::output::{self, Report};
use dumbbell::harness::sampler::{complies, sample_scatter_state, trial_rng};
use dumbbell::harness::{runner, ExperimentConfig, InitialState, Mode, SamplerSpec};
use dumbbell::model::DumbbellParams;
use dumbbell::simulate::Termination;

fn base_config(mode: Mode) -> ExperimentConfig {
    ExperimentConfig {
        mode,
        trials: 200,
        seed: 11,
        ..Default::default()
    }
}

#[test]
fn simulate_vertical_drop_writes_single_event_table() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(Mode::Simulate);
    cfg.out = dir.path().join("drop.csv");
    cfg.initial = Some(InitialState {
        y: 2.0,
        phi: 1.5 * std::f64::consts::PI,
        y_dot: -1.0,
        phi_dot: 0.0,
    });
    let report = runner::run_simulate(&cfg).unwrap();
    assert_eq!(report.outcome.termination, Termination::Escaped);
    assert_eq!(report.outcome.collision_count, 1);
    assert!(report.energy_drift <= 1e-12);

    let files = output::write_report(&cfg, &Report::Simulate(&report)).unwrap();
    assert_eq!(files.len(), 3);
    let events = fs::read_to_string(&files[0]).unwrap();
    let mut lines = events.lines();
    assert_eq!(
        lines.next().unwrap(),
        "index,time,mass_hit,y,phi,y_dot_pre,phi_dot_pre,y_dot_post,phi_dot_post,phi_travel,energy"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("0,"));
    assert!(row.contains(",mass1,"));
    assert_eq!(lines.next(), None);

    let summary = fs::read_to_string(&files[1]).unwrap();
    assert!(summary.contains("escaped"));
    let meta = fs::read_to_string(&files[2]).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&meta).unwrap();
    assert_eq!(doc["seed"], 11);
    assert_eq!(doc["mode"], "simulate");
}

#[test]
fn simulate_corner_aimed_reports_corner_hit() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = base_config(Mode::Simulate);
    cfg.out = dir.path().join("corner.csv");
    cfg.initial = Some(InitialState {
        y: 2.0,
        phi: 0.0,
        y_dot: -1.0,
        phi_dot: 0.0,
    });
    let report = runner::run_simulate(&cfg).unwrap();
    assert_eq!(report.outcome.termination, Termination::CornerHit);
}

#[test]
fn identical_config_and_seed_give_byte_identical_output() {
    let mut cfg = base_config(Mode::BoundCheck);
    cfg.ratios = vec![1.0, 10.0];
    let a = runner::run_bound_check(&cfg).unwrap();
    let b = runner::run_bound_check(&cfg).unwrap();
    assert_eq!(output::bound_check_csv(&a), output::bound_check_csv(&b));

    let scan_cfg = {
        let mut c = base_config(Mode::AdiabaticScan);
        c.trials = 50;
        c
    };
    let a = runner::run_adiabatic_scan(&scan_cfg).unwrap();
    let b = runner::run_adiabatic_scan(&scan_cfg).unwrap();
    assert_eq!(
        output::adiabatic_scan_csv(&a),
        output::adiabatic_scan_csv(&b)
    );

    let mut other_seed = scan_cfg.clone();
    other_seed.seed = 12;
    let c = runner::run_adiabatic_scan(&other_seed).unwrap();
    assert_ne!(
        output::adiabatic_scan_csv(&a),
        output::adiabatic_scan_csv(&c)
    );
}

#[test]
fn bound_check_single_trial_degenerate_config() {
    let mut cfg = base_config(Mode::BoundCheck);
    cfg.trials = 1;
    cfg.ratios = vec![2.0];
    let report = runner::run_bound_check(&cfg).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert_eq!(report.rows[0].trials, 1);
    assert!(!report.any_violation());
}

#[test]
fn adiabatic_single_rung_has_no_fit() {
    let mut cfg = base_config(Mode::AdiabaticScan);
    cfg.trials = 50;
    cfg.delta_ladder = vec![0.05];
    let report = runner::run_adiabatic_scan(&cfg).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert_eq!(report.drift_exponent, None);
    assert_eq!(report.count_exponent, None);
    assert_eq!(report.drift_monotone, None);
}

#[test]
fn sampler_output_passes_the_posthoc_validator() {
    let params = DumbbellParams::from_mass_ratio(10.0).unwrap();
    let spec = SamplerSpec::default();
    for stream in 0..4 {
        let mut rng = trial_rng(77, stream);
        for _ in 0..250 {
            let s = sample_scatter_state(&params, &spec, &mut rng);
            assert!(complies(&params, &spec, &s), "{s:?}");
        }
    }
}

#[test]
fn runner_rejects_mismatched_mode() {
    let cfg = base_config(Mode::Simulate);
    let err = runner::run_bound_check(&cfg).unwrap_err();
    assert!(err.to_string().contains("mode"));
}

#[test]
fn wedge_oracle_runner_agrees_everywhere() {
    let mut cfg = base_config(Mode::WedgeOracle);
    cfg.trials = 2000;
    let report = runner::run_wedge_oracle(&cfg).unwrap();
    assert_eq!(report.mismatches, 0);
    assert!(report.all_within_bound);
}
