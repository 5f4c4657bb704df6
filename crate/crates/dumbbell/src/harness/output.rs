//! File output: comma-separated tables with a header row, plus a JSON
//! metadata sidecar (config echo, seed, version, generator description)
//! next to each table.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::json;

use crate::geometry::BoundaryBranch;
use crate::model::kinetic_energy;
use crate::simulate::{BounceEvent, Termination};

use super::config::ExperimentConfig;
use super::runner::{AdiabaticScanReport, BoundCheckReport, SimulateReport, WedgeOracleReport};

pub fn branch_label(branch: BoundaryBranch) -> &'static str {
    match branch {
        BoundaryBranch::Mass1 => "mass1",
        BoundaryBranch::Mass2 => "mass2",
        BoundaryBranch::Corner => "corner",
    }
}

pub fn termination_label(t: Termination) -> &'static str {
    match t {
        Termination::Escaped => "escaped",
        Termination::CornerHit => "corner-hit",
        Termination::HorizonExceeded => "horizon-exceeded",
        Termination::StationaryState => "stationary",
    }
}

/// Event table: one row per bounce.
pub fn events_csv(params: &crate::Params, events: &[BounceEvent<f64>]) -> String {
    let mut out = String::from(
        "index,time,mass_hit,y,phi,y_dot_pre,phi_dot_pre,y_dot_post,phi_dot_post,phi_travel,energy\n",
    );
    for ev in events {
        let energy = kinetic_energy(params, &ev.post);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            ev.index,
            ev.time,
            branch_label(ev.mass_hit),
            ev.pre.y,
            ev.pre.phi,
            ev.pre.y_dot,
            ev.pre.phi_dot,
            ev.post.y_dot,
            ev.post.phi_dot,
            ev.phi_travel,
            energy,
        ));
    }
    out
}

pub fn simulate_summary_csv(report: &SimulateReport) -> String {
    let mut out = String::from(
        "collision_count,termination,energy_drift_rel,i_ad_initial,i_ad_final,i_ad_max_drift\n",
    );
    let fmt_opt = |v: Option<f64>| v.map_or(String::from(""), |x| x.to_string());
    out.push_str(&format!(
        "{},{},{},{},{},{}\n",
        report.outcome.collision_count,
        termination_label(report.outcome.termination),
        report.energy_drift,
        fmt_opt(report.invariant_initial),
        fmt_opt(report.invariant_final),
        fmt_opt(report.invariant_max_drift),
    ));
    out
}

pub fn bound_check_csv(report: &BoundCheckReport) -> String {
    let mut out = String::from(
        "ratio,trials,gamma,n_gamma,max_observed,violations,corner_hits,horizon_exceeded,violation_flag\n",
    );
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.ratio,
            r.trials,
            r.gamma,
            r.n_gamma,
            r.max_observed,
            r.violations,
            r.corner_hits,
            r.horizon_exceeded,
            r.violations > 0,
        ));
    }
    out
}

pub fn adiabatic_scan_csv(report: &AdiabaticScanReport) -> String {
    let mut out = String::from(
        "delta,epsilon,runs,resamples,resample_rate,median_drift,mean_drift,p90_drift,max_drift,mean_bounces,max_mass2_events,non_escaped\n",
    );
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.delta,
            r.epsilon,
            r.runs,
            r.resamples,
            r.resample_rate,
            r.median_drift,
            r.mean_drift,
            r.p90_drift,
            r.max_drift,
            r.mean_bounces,
            r.max_mass2_events,
            r.non_escaped,
        ));
    }
    out
}

pub fn wedge_oracle_csv(report: &WedgeOracleReport) -> String {
    let mut out = String::from("trials,mismatches,vertex_rejects,max_count,all_within_bound\n");
    out.push_str(&format!(
        "{},{},{},{},{}\n",
        report.trials,
        report.mismatches,
        report.vertex_rejects,
        report.max_count,
        report.all_within_bound,
    ));
    out
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    path.with_file_name(name)
}

fn write_file(path: &Path, body: &str) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, body)
}

/// Metadata sidecar carrying everything needed to reproduce the run.
pub fn meta_json(cfg: &ExperimentConfig, results: serde_json::Value) -> String {
    let doc = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "rng": "chacha8; trial i uses stream i of the run seed",
        "seed": cfg.seed,
        "mode": cfg.mode.to_string(),
        "config": cfg,
        "results": results,
    });
    let mut body = serde_json::to_string_pretty(&doc).expect("config serializes");
    body.push('\n');
    body
}

/// Write a report's tables plus the metadata sidecar; returns the paths
/// written.
pub enum Report<'a> {
    Simulate(&'a SimulateReport),
    BoundCheck(&'a BoundCheckReport),
    AdiabaticScan(&'a AdiabaticScanReport),
    WedgeOracle(&'a WedgeOracleReport),
}

pub fn write_report(cfg: &ExperimentConfig, report: &Report<'_>) -> io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let main = cfg.out.clone();
    match report {
        Report::Simulate(r) => {
            write_file(&main, &events_csv(&r.params, &r.outcome.events))?;
            written.push(main.clone());
            let summary = sibling(&main, ".summary.csv");
            write_file(&summary, &simulate_summary_csv(r))?;
            written.push(summary);
            let meta = sibling(&main, ".meta.json");
            write_file(
                &meta,
                &meta_json(
                    cfg,
                    json!({
                        "collision_count": r.outcome.collision_count,
                        "termination": termination_label(r.outcome.termination),
                        "energy_drift_rel": r.energy_drift,
                    }),
                ),
            )?;
            written.push(meta);
        }
        Report::BoundCheck(r) => {
            write_file(&main, &bound_check_csv(r))?;
            written.push(main.clone());
            let meta = sibling(&main, ".meta.json");
            write_file(
                &meta,
                &meta_json(cfg, json!({ "any_violation": r.any_violation() })),
            )?;
            written.push(meta);
        }
        Report::AdiabaticScan(r) => {
            write_file(&main, &adiabatic_scan_csv(r))?;
            written.push(main.clone());
            let meta = sibling(&main, ".meta.json");
            write_file(
                &meta,
                &meta_json(
                    cfg,
                    json!({
                        "drift_exponent": r.drift_exponent,
                        "count_exponent": r.count_exponent,
                        "drift_monotone": r.drift_monotone,
                        "annulus": { "c1": r.annulus.0, "c2": r.annulus.1 },
                    }),
                ),
            )?;
            written.push(meta);
        }
        Report::WedgeOracle(r) => {
            write_file(&main, &wedge_oracle_csv(r))?;
            written.push(main.clone());
            let meta = sibling(&main, ".meta.json");
            write_file(
                &meta,
                &meta_json(
                    cfg,
                    json!({
                        "mismatches": r.mismatches,
                        "all_within_bound": r.all_within_bound,
                    }),
                ),
            )?;
            written.push(meta);
        }
    }
    Ok(written)
}
