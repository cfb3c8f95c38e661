//! Scripted experiment suites: the single-qubit estimation suite, the
//! two-qubit local/global suite, the entangled-family state preparation, and
//! the step-size speed sweep.
//!
//! Each suite pairs every trajectory with the exact oracle report for its
//! initial state and aggregates deviation statistics. All randomness is
//! derived from one master seed: run `idx` draws its initial state and its
//! run stream from `Rng::derive(master, idx)`, so results are reproducible
//! and independent of execution order.

use crate::feedback::{
    detect_convergence, run_fqergo, ErrorModel, FeedbackError, FqergoConfig, MeasurementMode,
    Trajectory,
};
use crate::hamiltonians::{
    drive_set_global_with, drive_set_local, single_qubit_h0, two_qubit_h0,
    HamiltonianError, LocalChannels, PhaseTag,
};
use crate::linalg::{c, kron, ComplexMatrix};
use crate::oracle::{oracle_report, oracle_report_two_qubit, OracleError, OracleReport};
use crate::probe::controlled_gate;
use crate::rng::Rng;
use crate::states::{random_pure, DensityMatrix, StateError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("suite needs at least one state")]
    NoStates,
    #[error("step-time grid must be strictly increasing and positive")]
    BadGrid,
    #[error(transparent)]
    Feedback(#[from] FeedbackError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
}

/// Which register the experiment runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SystemKind {
    OneQubit,
    TwoQubit,
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SystemKind::OneQubit => write!(f, "1q"),
            SystemKind::TwoQubit => write!(f, "2q"),
        }
    }
}

/// Knobs shared by the scripted suites. `phase_iterations` is the local
/// phase length; two-qubit suites use the same length for the global phase
/// (the simulation preset is 30+30, the hardware-style preset 10+10).
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub measurement: MeasurementMode,
    pub tau: f64,
    pub phase_iterations: usize,
    pub local_channels: LocalChannels,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            measurement: MeasurementMode::Exact,
            tau: 0.8,
            phase_iterations: 30,
            local_channels: LocalChannels::PerQubit,
        }
    }
}

impl SuiteOptions {
    /// 10+10 iteration schedule matching the hardware demonstration.
    pub fn nmr_preset() -> Self {
        SuiteOptions {
            phase_iterations: 10,
            ..Self::default()
        }
    }
}

fn run_seeds(master: u64, idx: u64) -> (u64, u64) {
    let mut r = Rng::derive(master, idx);
    (r.next_u64(), r.next_u64())
}

/// Single-qubit estimation suite: `n_states` random pure states driven to
/// their passive states, each paired with its oracle report. With
/// `error_on`, a 5-degree random-axis rotation error acts every iteration.
pub fn single_qubit_suite(
    n_states: usize,
    error_on: bool,
    seed: u64,
) -> Result<Vec<(Trajectory, OracleReport)>, ExperimentError> {
    single_qubit_suite_with(n_states, error_on, seed, &SuiteOptions::default())
}

pub fn single_qubit_suite_with(
    n_states: usize,
    error_on: bool,
    seed: u64,
    options: &SuiteOptions,
) -> Result<Vec<(Trajectory, OracleReport)>, ExperimentError> {
    if n_states == 0 {
        return Err(ExperimentError::NoStates);
    }
    let h0 = single_qubit_h0(1.0)?;
    let mut out = Vec::with_capacity(n_states);
    for idx in 0..n_states {
        let (state_seed, run_seed) = run_seeds(seed, idx as u64);
        let rho = random_pure(1, state_seed)?;
        let mut config = FqergoConfig::new(
            drive_set_local(1)?,
            vec![(PhaseTag::Local, options.phase_iterations)],
            run_seed,
        );
        config.tau = options.tau;
        config.measurement_mode = options.measurement;
        if error_on {
            config.error_model = ErrorModel::RandomRotation { angle_deg: 5.0 };
        }
        let traj = run_fqergo(&rho, &h0, &config)?;
        let report = oracle_report(&rho, &h0)?;
        out.push((traj, report));
    }
    Ok(out)
}

/// Two-qubit suite (ω₀ = 1, J = 0.01): a local phase then a global phase,
/// recording local and global ergotropy estimates against the full oracle
/// report. With `error_on`, a 2-degree random-Hamiltonian error acts every
/// iteration.
pub fn two_qubit_suite(
    n_states: usize,
    error_on: bool,
    seed: u64,
) -> Result<Vec<(Trajectory, OracleReport)>, ExperimentError> {
    two_qubit_suite_with(n_states, error_on, seed, &SuiteOptions::default())
}

pub fn two_qubit_suite_with(
    n_states: usize,
    error_on: bool,
    seed: u64,
    options: &SuiteOptions,
) -> Result<Vec<(Trajectory, OracleReport)>, ExperimentError> {
    if n_states == 0 {
        return Err(ExperimentError::NoStates);
    }
    let h0 = two_qubit_h0(1.0, 0.01)?;
    let mut out = Vec::with_capacity(n_states);
    for idx in 0..n_states {
        let (state_seed, run_seed) = run_seeds(seed, idx as u64);
        let rho = random_pure(2, state_seed)?;
        let mut config = FqergoConfig::new(
            drive_set_global_with(2, options.local_channels)?,
            vec![
                (PhaseTag::Local, options.phase_iterations),
                (PhaseTag::Global, options.phase_iterations),
            ],
            run_seed,
        );
        config.tau = options.tau;
        config.measurement_mode = options.measurement;
        if error_on {
            config.error_model = ErrorModel::RandomHamiltonian { eta_deg: 2.0 };
        }
        let traj = run_fqergo(&rho, &h0, &config)?;
        let report = oracle_report_two_qubit(&rho, 1.0, 0.01)?;
        out.push((traj, report));
    }
    Ok(out)
}

/// Initial-state family with tunable entanglement: ρ(ν) = U_G|00⟩⟨00|U_G†
/// where U_G = controlled-e^{-iνσ_x/2} · (Hadamard⊗I). The entanglement
/// entropy of either reduced qubit rises monotonically from 0 at ν = 0 to
/// 1 bit at ν = π.
pub fn entangled_initial_state(nu: f64) -> DensityMatrix {
    let h = 0.5f64.sqrt();
    let hadamard = ComplexMatrix::from_rows(&[
        vec![c(h, 0.0), c(h, 0.0)],
        vec![c(h, 0.0), c(-h, 0.0)],
    ]);
    let id = ComplexMatrix::identity(2);
    let had_on_first = kron(&hadamard, &id).expect("4x4 within limit");
    // e^{-iν I_x}: spin convention, rotation by ν about x.
    let target = crate::hamiltonians::sigma_x().scale(c(0.5, 0.0));
    let rot = crate::linalg::hermitian_eig(&target)
        .expect("σ_x/2 is Hermitian")
        .exp_unitary(nu);
    let controlled = controlled_gate(&rot).expect("rotation is unitary");
    let u_g = controlled.matmul(&had_on_first);
    DensityMatrix::basis_state(2, 0)
        .evolved(&u_g)
        .expect("4x4 unitary")
}

/// Per-τ aggregate of the speed sweep.
#[derive(Debug, Clone, Serialize)]
pub struct TauStats {
    pub tau: f64,
    pub converged: usize,
    pub min_n: Option<usize>,
    pub median_n: Option<usize>,
    pub max_n: Option<usize>,
}

/// Convergence counts over a (τ, state) grid. `counts[i][j]` is the number
/// of iterations state `j` needed at grid point `i` (the iteration at which
/// a full in-tolerance window is confirmed), or `None` when the run never
/// settled within the iteration cap.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub system: SystemKind,
    pub grid: Vec<f64>,
    pub n_states: usize,
    pub seed: u64,
    pub counts: Vec<Vec<Option<usize>>>,
    pub stats: Vec<TauStats>,
}

/// Iteration cap per sweep cell.
pub const SWEEP_ITERATION_CAP: usize = 500;

/// Convergence-count sweep over step times: for each (τ, state) cell, run
/// the feedback loop (local drives for one qubit, the global protocol for
/// two) against the oracle passive energy with the default rule
/// (tol 1e-3·ω₀, window 3).
pub fn speed_sweep(
    system: SystemKind,
    tau_grid: &[f64],
    n_states: usize,
    seed: u64,
) -> Result<SweepResult, ExperimentError> {
    if n_states == 0 {
        return Err(ExperimentError::NoStates);
    }
    if tau_grid.is_empty()
        || tau_grid.windows(2).any(|w| w[1] <= w[0])
        || tau_grid[0] <= 0.0
    {
        return Err(ExperimentError::BadGrid);
    }

    let h0 = match system {
        SystemKind::OneQubit => single_qubit_h0(1.0)?,
        SystemKind::TwoQubit => two_qubit_h0(1.0, 0.01)?,
    };

    // Initial states and their oracle targets are shared across the grid.
    let mut states = Vec::with_capacity(n_states);
    for idx in 0..n_states {
        let (state_seed, run_seed) = run_seeds(seed, idx as u64);
        let n_qubits = match system {
            SystemKind::OneQubit => 1,
            SystemKind::TwoQubit => 2,
        };
        let rho = random_pure(n_qubits, state_seed)?;
        let report = oracle_report(&rho, &h0)?;
        states.push((rho, report.passive_energy, run_seed));
    }

    let mut counts = Vec::with_capacity(tau_grid.len());
    let mut stats = Vec::with_capacity(tau_grid.len());
    for &tau in tau_grid {
        let mut row = Vec::with_capacity(n_states);
        for (rho, target, run_seed) in &states {
            let mut config = match system {
                SystemKind::OneQubit => FqergoConfig::new(
                    drive_set_local(1)?,
                    vec![(PhaseTag::Local, SWEEP_ITERATION_CAP)],
                    *run_seed,
                ),
                SystemKind::TwoQubit => FqergoConfig::new(
                    drive_set_global_with(2, LocalChannels::PerQubit)?,
                    vec![(PhaseTag::Global, SWEEP_ITERATION_CAP)],
                    *run_seed,
                ),
            };
            config.tau = tau;
            let traj = run_fqergo(rho, &h0, &config)?;
            let rule = config.convergence;
            let n = detect_convergence(&traj, *target, rule.tol, rule.window)
                .map(|k| k + rule.window - 1);
            row.push(n);
        }
        let mut settled: Vec<usize> = row.iter().flatten().copied().collect();
        settled.sort_unstable();
        stats.push(TauStats {
            tau,
            converged: settled.len(),
            min_n: settled.first().copied(),
            median_n: (!settled.is_empty()).then(|| settled[settled.len() / 2]),
            max_n: settled.last().copied(),
        });
        counts.push(row);
    }

    Ok(SweepResult {
        system,
        grid: tau_grid.to_vec(),
        n_states,
        seed,
        counts,
        stats,
    })
}

/// Evenly spaced grid with `steps` points from `start` to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2 && end > start);
    (0..steps)
        .map(|i| start + (end - start) * i as f64 / (steps - 1) as f64)
        .collect()
}

// --- aggregation -------------------------------------------------------------

/// One suite row: a state's estimates next to its oracle values.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteRow {
    pub state_index: usize,
    pub initial_energy: f64,
    pub final_energy: f64,
    pub exact_ergotropy: f64,
    pub estimated_ergotropy: f64,
    pub exact_local_sum: Option<f64>,
    pub exact_local_opt: Option<f64>,
    pub estimated_local: Option<f64>,
    pub estimated_global: Option<f64>,
    pub exact_gap: Option<f64>,
    pub estimated_gap: Option<f64>,
}

/// Machine-readable suite summary: per-state rows plus deviation statistics.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub system: SystemKind,
    pub n_states: usize,
    pub seed: u64,
    pub error_model: String,
    pub rows: Vec<SuiteRow>,
    pub rms_ergotropy_dev: f64,
    pub max_abs_ergotropy_dev: f64,
    pub rms_gap_dev: Option<f64>,
}

pub fn summarize_suite(
    system: SystemKind,
    seed: u64,
    error_model: &str,
    results: &[(Trajectory, OracleReport)],
) -> SuiteSummary {
    let mut rows = Vec::with_capacity(results.len());
    let mut sq_dev = 0.0;
    let mut max_dev = 0.0f64;
    let mut sq_gap = 0.0;
    let mut have_gap = false;
    for (idx, (traj, report)) in results.iter().enumerate() {
        let estimated = traj
            .estimated_ergotropy()
            .expect("suite trajectories are nonempty");
        let estimated_gap = match (traj.estimated_ergotropy_global, traj.estimated_ergotropy_local)
        {
            (Some(g), Some(l)) => Some(g - l),
            _ => None,
        };
        let dev = estimated - report.ergotropy;
        sq_dev += dev * dev;
        max_dev = max_dev.max(dev.abs());
        if let (Some(est_gap), Some(exact_gap)) = (estimated_gap, report.gap) {
            sq_gap += (est_gap - exact_gap) * (est_gap - exact_gap);
            have_gap = true;
        }
        rows.push(SuiteRow {
            state_index: idx,
            initial_energy: traj.initial_energy,
            final_energy: traj.records.last().map(|r| r.energy_after).unwrap_or(f64::NAN),
            exact_ergotropy: report.ergotropy,
            estimated_ergotropy: estimated,
            exact_local_sum: report.local_sum_ergotropy,
            exact_local_opt: report.local_opt_ergotropy,
            estimated_local: traj.estimated_ergotropy_local,
            estimated_global: traj.estimated_ergotropy_global,
            exact_gap: report.gap,
            estimated_gap,
        });
    }
    let n = results.len().max(1) as f64;
    SuiteSummary {
        system,
        n_states: results.len(),
        seed,
        error_model: error_model.to_string(),
        rows,
        rms_ergotropy_dev: (sq_dev / n).sqrt(),
        max_abs_ergotropy_dev: max_dev,
        rms_gap_dev: have_gap.then(|| (sq_gap / n).sqrt()),
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Suite CSV, one row per state. Column order is fixed:
/// `state_index,initial_energy,final_energy,exact_ergotropy,estimated_ergotropy,
/// exact_local_sum,exact_local_opt,estimated_local,estimated_global,exact_gap,estimated_gap`.
pub fn suite_csv(summary: &SuiteSummary) -> String {
    let mut out = String::from(
        "state_index,initial_energy,final_energy,exact_ergotropy,estimated_ergotropy,exact_local_sum,exact_local_opt,estimated_local,estimated_global,exact_gap,estimated_gap\n",
    );
    for r in &summary.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.state_index,
            r.initial_energy,
            r.final_energy,
            r.exact_ergotropy,
            r.estimated_ergotropy,
            fmt_opt(r.exact_local_sum),
            fmt_opt(r.exact_local_opt),
            fmt_opt(r.estimated_local),
            fmt_opt(r.estimated_global),
            fmt_opt(r.exact_gap),
            fmt_opt(r.estimated_gap),
        ));
    }
    out
}

/// Sweep CSV in long form: `tau,state_index,n` with an empty `n` for cells
/// that never converged.
pub fn sweep_csv(sweep: &SweepResult) -> String {
    let mut out = String::from("tau,state_index,n\n");
    for (i, tau) in sweep.grid.iter().enumerate() {
        for (j, n) in sweep.counts[i].iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                tau,
                j,
                n.map(|v| v.to_string()).unwrap_or_default()
            ));
        }
    }
    out
}
