//! Result persistence: CSV/JSON/SVG files written after all computation
//! finishes, each through a temp-file rename so a failed run leaves no
//! partial outputs.

use anyhow::{Context, Result};
use fqergo::experiments::{SuiteSummary, SweepResult};
use fqergo::feedback::{beta_labels, trajectory_csv, FqergoConfig, Trajectory};
use std::path::{Path, PathBuf};

use crate::svg::{self, Plot};

/// A batch of files to write together.
pub struct OutputBatch {
    files: Vec<(String, String)>,
}

impl OutputBatch {
    pub fn new() -> Self {
        OutputBatch { files: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    /// Write every file into `dir` (created if needed) via temp + rename.
    pub fn write_all(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
        let mut written = Vec::with_capacity(self.files.len());
        for (name, contents) in &self.files {
            let target = dir.join(name);
            let tmp = dir.join(format!(".{name}.tmp"));
            std::fs::write(&tmp, contents)
                .with_context(|| format!("cannot write {}", tmp.display()))?;
            std::fs::rename(&tmp, &target)
                .with_context(|| format!("cannot move {} into place", target.display()))?;
            written.push(target);
        }
        Ok(written)
    }
}

pub fn wants(formats: &[String], format: &str) -> bool {
    formats.iter().any(|f| f == format)
}

/// Files for a single trajectory run.
pub fn single_run_outputs(
    traj: &Trajectory,
    engine: &FqergoConfig,
    oracle_json: serde_json::Value,
    fingerprint: &str,
    formats: &[String],
) -> Result<OutputBatch> {
    let mut batch = OutputBatch::new();
    if wants(formats, "csv") {
        batch.push("trajectory.csv", trajectory_csv(traj, &beta_labels(engine)));
    }
    if wants(formats, "json") {
        let summary = serde_json::json!({
            "initial_energy": traj.initial_energy,
            "final_energy": traj.records.last().map(|r| r.energy_after),
            "estimated_ergotropy": traj.estimated_ergotropy().ok(),
            "estimated_ergotropy_local": traj.estimated_ergotropy_local,
            "estimated_ergotropy_global": traj.estimated_ergotropy_global,
            "min_energy": traj.min_energy(),
            "iterations": traj.records.len(),
            "oracle": oracle_json,
            "fingerprint": fingerprint,
        });
        batch.push("summary.json", serde_json::to_string_pretty(&summary)? + "\n");
    }
    if wants(formats, "svg") {
        let energy_line: Vec<(f64, f64)> = traj
            .energy_sequence()
            .iter()
            .enumerate()
            .map(|(k, &e)| (k as f64, e))
            .collect();
        let plot = Plot {
            title: "System energy vs iteration".into(),
            x_label: "iteration k".into(),
            y_label: "E(rho_k)".into(),
            metadata: fingerprint.into(),
        };
        batch.push("energy_vs_iteration.svg", svg::line_chart(&plot, &[energy_line]));
    }
    Ok(batch)
}

/// Files for a suite: per-state trajectory CSVs, the suite CSV, the summary
/// JSON, the energy-vs-iteration chart, and the estimated-vs-exact scatter.
pub fn suite_outputs(
    trajectories: &[&Trajectory],
    engine_labels: &[String],
    summary: &SuiteSummary,
    fingerprint: &str,
    formats: &[String],
) -> Result<OutputBatch> {
    let mut batch = OutputBatch::new();
    if wants(formats, "csv") {
        for (idx, traj) in trajectories.iter().enumerate() {
            batch.push(
                format!("trajectory_{idx:03}.csv"),
                trajectory_csv(traj, engine_labels),
            );
        }
        batch.push("suite.csv", fqergo::experiments::suite_csv(summary));
    }
    if wants(formats, "json") {
        batch.push(
            "summary.json",
            serde_json::to_string_pretty(&serde_json::json!({
                "summary": summary,
                "fingerprint": fingerprint,
            }))? + "\n",
        );
    }
    if wants(formats, "svg") {
        let series: Vec<Vec<(f64, f64)>> = trajectories
            .iter()
            .map(|traj| {
                traj.energy_sequence()
                    .iter()
                    .enumerate()
                    .map(|(k, &e)| (k as f64, e))
                    .collect()
            })
            .collect();
        let energy_plot = Plot {
            title: "System energy vs iteration".into(),
            x_label: "iteration k".into(),
            y_label: "E(rho_k)".into(),
            metadata: fingerprint.into(),
        };
        batch.push("energy_vs_iteration.svg", svg::line_chart(&energy_plot, &series));

        let scatter_plot = Plot {
            title: "Estimated vs exact ergotropy".into(),
            x_label: "exact".into(),
            y_label: "estimated".into(),
            metadata: fingerprint.into(),
        };
        let mut groups: Vec<(&str, Vec<(f64, f64)>)> = vec![(
            "ergotropy",
            summary
                .rows
                .iter()
                .map(|r| (r.exact_ergotropy, r.estimated_ergotropy))
                .collect(),
        )];
        let gap_points: Vec<(f64, f64)> = summary
            .rows
            .iter()
            .filter_map(|r| Some((r.exact_gap?, r.estimated_gap?)))
            .collect();
        if !gap_points.is_empty() {
            groups.push(("gap", gap_points));
        }
        batch.push(
            "estimated_vs_exact.svg",
            svg::scatter(&scatter_plot, &groups, true),
        );
    }
    Ok(batch)
}

/// Files for a speed sweep: the long-form CSV, per-τ statistics, and the
/// n-vs-τ scatter.
pub fn sweep_outputs(
    sweep: &SweepResult,
    fingerprint: &str,
    formats: &[String],
) -> Result<OutputBatch> {
    let mut batch = OutputBatch::new();
    if wants(formats, "csv") {
        batch.push("sweep.csv", fqergo::experiments::sweep_csv(sweep));
    }
    if wants(formats, "json") {
        batch.push(
            "sweep_summary.json",
            serde_json::to_string_pretty(&serde_json::json!({
                "system": sweep.system,
                "seed": sweep.seed,
                "n_states": sweep.n_states,
                "stats": sweep.stats,
                "fingerprint": fingerprint,
            }))? + "\n",
        );
    }
    if wants(formats, "svg") {
        let points: Vec<(f64, f64)> = sweep
            .grid
            .iter()
            .zip(&sweep.counts)
            .flat_map(|(&tau, row)| {
                row.iter()
                    .filter_map(move |n| n.map(|v| (tau, v as f64)))
            })
            .collect();
        let plot = Plot {
            title: format!("Convergence iterations vs step time ({})", sweep.system),
            x_label: "omega0 * tau".into(),
            y_label: "iterations n".into(),
            metadata: fingerprint.into(),
        };
        batch.push("n_vs_tau.svg", svg::scatter(&plot, &[("states", points)], false));
    }
    Ok(batch)
}
