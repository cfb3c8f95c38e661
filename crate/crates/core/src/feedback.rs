//! The feedback engine: per-iteration coefficient measurement, drive
//! application, error injection, trajectory recording, and convergence
//! detection.
//!
//! Each iteration, for every active drive channel, the coefficient
//! β = -w·Tr(C_d ρ) with C_d = i[H_d, H₀] is measured (exactly, via the
//! probe circuit, or via the probe with shot noise) and the unitary
//! e^{-iβτH_d} is applied. The sign of β makes ⟨H₀⟩ non-increasing in the
//! continuous-time limit; energy eigenstates are fixed points. In the global
//! phase the tilted phase gate Z_δ runs between the always-on channels and
//! the global-only channels.

use crate::hamiltonians::{
    commutator_observable, energy, z_delta, ChannelPhase, DriveSet, DriveTerm, Hamiltonian,
    HamiltonianError, PhaseTag,
};
use crate::linalg::{
    hermitian_eig, kron_all, trace_product_re, ComplexMatrix, HermitianEig, LinalgError,
};
use crate::oracle::{passive_state, OracleError};
use crate::probe::{read_encoded, sample_reading, ProbeError};
use crate::rng::Rng;
use crate::states::{overlap_fidelity, DensityMatrix, StateError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FeedbackError {
    #[error("invalid config: {reason}")]
    InvalidConfig { reason: String },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("trajectory has no recorded iterations")]
    EmptyTrajectory,
    #[error("non-finite energy {energy} recorded at iteration {index}")]
    NonFiniteEnergy { index: usize, energy: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Probe(#[from] ProbeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// How β and E are read each iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MeasurementMode {
    /// Direct traces (infinite-statistics, no probe circuit).
    Exact,
    /// Ancilla-probe circuits in the infinite-shot limit (carries the O(α²)
    /// encoding bias, no sampling noise).
    Probe,
    /// Probe circuits with binomial shot noise on each readout.
    ProbeShots { shots: u64 },
}

/// Unitary error injected once per iteration, after all drive channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ErrorModel {
    None,
    /// Rotation by `angle_deg` about a fresh random axis on each qubit.
    RandomRotation { angle_deg: f64 },
    /// U = e^{-iH·η} with H a random Hermitian of unit spectral norm.
    RandomHamiltonian { eta_deg: f64 },
}

/// When β values are measured within one iteration: re-measured on the
/// current state before each channel, or all measured up front on the state
/// that entered the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BetaSchedule {
    #[default]
    Sequential,
    Upfront,
}

/// Whether channels are exponentiated one by one (a product of per-channel
/// unitaries, each with its own β) or as a single exponential of the summed
/// generator with one β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DriveApplication {
    #[default]
    Sequential,
    Combined,
}

/// Convergence rule: energy must stay within `tol` of the target for
/// `window` consecutive positions.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConvergenceRule {
    pub tol: f64,
    pub window: usize,
}

impl Default for ConvergenceRule {
    fn default() -> Self {
        ConvergenceRule { tol: 1e-3, window: 3 }
    }
}

/// Full recipe for one feedback run.
#[derive(Debug, Clone)]
pub struct FqergoConfig {
    /// Lyapunov gain; β = -w·⟨C_d⟩.
    pub w: f64,
    /// Step time τ (dimensionless ω₀τ when ω₀ = 1).
    pub tau: f64,
    /// Phase schedule, executed in order.
    pub phases: Vec<(PhaseTag, usize)>,
    pub drive_set: DriveSet,
    /// Tilt angle of the Z_δ gate.
    pub delta: f64,
    pub measurement_mode: MeasurementMode,
    /// Hermitian-encoding angle for probe readouts.
    pub alpha: f64,
    pub error_model: ErrorModel,
    pub convergence: ConvergenceRule,
    pub seed: u64,
    pub beta_schedule: BetaSchedule,
    pub drive_application: DriveApplication,
}

impl FqergoConfig {
    /// Baseline recipe: w = 1, ω₀τ = 0.8, exact measurement, no error,
    /// δ = 0.1, α = 0.01.
    pub fn new(drive_set: DriveSet, phases: Vec<(PhaseTag, usize)>, seed: u64) -> Self {
        FqergoConfig {
            w: 1.0,
            tau: 0.8,
            phases,
            drive_set,
            delta: 0.1,
            measurement_mode: MeasurementMode::Exact,
            alpha: 0.01,
            error_model: ErrorModel::None,
            convergence: ConvergenceRule::default(),
            seed,
            beta_schedule: BetaSchedule::default(),
            drive_application: DriveApplication::default(),
        }
    }

    pub fn validate(&self) -> Result<(), FeedbackError> {
        let fail = |reason: String| Err(FeedbackError::InvalidConfig { reason });
        if self.w.is_nan() || self.w <= 0.0 {
            return fail(format!("w must be positive, got {}", self.w));
        }
        if self.tau.is_nan() || self.tau <= 0.0 {
            return fail(format!("tau must be positive, got {}", self.tau));
        }
        if self.drive_set.terms.is_empty() {
            return fail("drive set has no channels".into());
        }
        if self.phases.is_empty() {
            return fail("phase schedule is empty".into());
        }
        if let Some((tag, n)) = self.phases.iter().find(|(_, n)| *n < 1) {
            return fail(format!("phase {tag} has iteration count {n} (must be ≥ 1)"));
        }
        if self.alpha.is_nan() || self.alpha <= 0.0 || self.alpha > 0.2 {
            return fail(format!("alpha must lie in (0, 0.2], got {}", self.alpha));
        }
        if let MeasurementMode::ProbeShots { shots } = self.measurement_mode {
            if shots == 0 {
                return fail("shot count must be ≥ 1".into());
            }
        }
        match self.error_model {
            ErrorModel::RandomRotation { angle_deg } if angle_deg < 0.0 => {
                return fail(format!("rotation error angle must be ≥ 0, got {angle_deg}"));
            }
            ErrorModel::RandomHamiltonian { eta_deg } if eta_deg < 0.0 => {
                return fail(format!("error strength η must be ≥ 0, got {eta_deg}"));
            }
            _ => {}
        }
        if self.convergence.tol.is_nan() || self.convergence.tol <= 0.0 || self.convergence.window < 1
        {
            return fail("convergence rule needs tol > 0 and window ≥ 1".into());
        }
        Ok(())
    }
}

/// Everything recorded about one iteration.
#[derive(Debug, Clone, Serialize)]
pub struct IterationRecord {
    pub index: usize,
    pub phase: PhaseTag,
    /// (channel label, β) pairs in application order.
    pub betas: Vec<(String, f64)>,
    pub energy_after: f64,
    pub fidelity_to_initial: f64,
    pub fidelity_to_passive: f64,
}

/// A completed run: initial energy, per-iteration records, final state, and
/// the two phase-level ergotropy estimates.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub initial_energy: f64,
    pub records: Vec<IterationRecord>,
    pub final_state: DensityMatrix,
    pub estimated_ergotropy_local: Option<f64>,
    pub estimated_ergotropy_global: Option<f64>,
}

impl Trajectory {
    /// E(ρ₀) - E(ρ_n) from recorded energies.
    pub fn estimated_ergotropy(&self) -> Result<f64, FeedbackError> {
        let last = self.records.last().ok_or(FeedbackError::EmptyTrajectory)?;
        Ok(self.initial_energy - last.energy_after)
    }

    /// Smallest recorded energy, including the initial one (diagnostic; the
    /// estimate itself always uses the final state).
    pub fn min_energy(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.energy_after)
            .fold(self.initial_energy, f64::min)
    }

    /// Energy sequence starting with the initial energy (index 0 = before
    /// any iteration).
    pub fn energy_sequence(&self) -> Vec<f64> {
        let mut seq = Vec::with_capacity(self.records.len() + 1);
        seq.push(self.initial_energy);
        seq.extend(self.records.iter().map(|r| r.energy_after));
        seq
    }
}

/// β = -w·Tr(i[H_d, H₀]·ρ), the exact Lyapunov coefficient for one channel.
pub fn lyapunov_coefficient(
    rho: &DensityMatrix,
    h0: &Hamiltonian,
    drive: &DriveTerm,
    w: f64,
) -> Result<f64, FeedbackError> {
    if rho.dim() != h0.dim() || drive.generator.rows() != h0.dim() {
        return Err(FeedbackError::DimMismatch {
            left: rho.dim(),
            right: h0.dim(),
        });
    }
    let c_d = commutator_observable(drive, h0);
    Ok(-w * trace_product_re(&c_d, rho.matrix()))
}

struct EngineChannel {
    label: String,
    active_phase: ChannelPhase,
    step_time: Option<f64>,
    generator_eig: HermitianEig,
    c_d: ComplexMatrix,
    /// exp(-iα·C_d); present only in probe modes.
    u_beta_probe: Option<ComplexMatrix>,
}

/// Precomputed per-run state: channel spectra, commutator observables,
/// probe-encoding unitaries, the Z_δ matrix, and the fidelity references.
struct RunContext<'a> {
    h0: &'a Hamiltonian,
    config: &'a FqergoConfig,
    channels: Vec<EngineChannel>,
    combined: Vec<(PhaseTag, EngineChannel)>,
    z_delta_gate: ComplexMatrix,
    /// exp(-iα·H₀) for probe energy readouts.
    u_energy_probe: Option<ComplexMatrix>,
    initial: DensityMatrix,
    target_passive: DensityMatrix,
}

impl<'a> RunContext<'a> {
    fn new(
        rho0: &DensityMatrix,
        h0: &'a Hamiltonian,
        config: &'a FqergoConfig,
    ) -> Result<Self, FeedbackError> {
        config.validate()?;
        if rho0.dim() != h0.dim() || config.drive_set.n_qubits() != h0.n_qubits() {
            return Err(FeedbackError::DimMismatch {
                left: rho0.dim(),
                right: h0.dim(),
            });
        }
        let probing = config.measurement_mode != MeasurementMode::Exact;
        let build = |label: String,
                     active: ChannelPhase,
                     step_time: Option<f64>,
                     generator: &ComplexMatrix|
         -> Result<EngineChannel, FeedbackError> {
            let c_d = crate::linalg::commutator_i(generator, h0.matrix());
            let u_beta_probe = if probing {
                Some(hermitian_eig(&c_d)?.exp_unitary(config.alpha))
            } else {
                None
            };
            Ok(EngineChannel {
                label,
                active_phase: active,
                step_time,
                generator_eig: hermitian_eig(generator)?,
                c_d,
                u_beta_probe,
            })
        };

        let mut channels = Vec::new();
        for term in &config.drive_set.terms {
            channels.push(build(
                term.label.clone(),
                term.active_phase,
                term.step_time,
                &term.generator,
            )?);
        }

        // Combined mode: one summed generator per phase that has channels.
        let mut combined = Vec::new();
        if config.drive_application == DriveApplication::Combined {
            for phase in [PhaseTag::Local, PhaseTag::Global] {
                let active: Vec<&DriveTerm> = config.drive_set.active_terms(phase).collect();
                if active.is_empty() {
                    continue;
                }
                let mut sum = active[0].generator.clone();
                for t in &active[1..] {
                    sum = sum.add(&t.generator);
                }
                combined.push((phase, build("combined".into(), ChannelPhase::Both, None, &sum)?));
            }
        }

        let u_energy_probe = if probing {
            Some(h0.eig().exp_unitary(config.alpha))
        } else {
            None
        };

        let (target_passive, _) = passive_state(rho0, h0)?;
        Ok(RunContext {
            h0,
            config,
            channels,
            combined,
            z_delta_gate: z_delta(config.delta),
            u_energy_probe,
            initial: rho0.clone(),
            target_passive,
        })
    }

    fn probe_estimate(
        &self,
        rho: &DensityMatrix,
        u: &ComplexMatrix,
        rng: &mut Rng,
    ) -> Result<f64, FeedbackError> {
        let reading = read_encoded(rho, u)?;
        let reading = match self.config.measurement_mode {
            MeasurementMode::ProbeShots { shots } => sample_reading(&reading, shots, rng)?,
            _ => reading,
        };
        Ok(-reading.value / self.config.alpha)
    }

    fn measure_beta(
        &self,
        rho: &DensityMatrix,
        channel: &EngineChannel,
        rng: &mut Rng,
    ) -> Result<f64, FeedbackError> {
        let expectation = match self.config.measurement_mode {
            MeasurementMode::Exact => trace_product_re(&channel.c_d, rho.matrix()),
            _ => self.probe_estimate(rho, channel.u_beta_probe.as_ref().unwrap(), rng)?,
        };
        Ok(-self.config.w * expectation)
    }

    fn measure_energy(&self, rho: &DensityMatrix, rng: &mut Rng) -> Result<f64, FeedbackError> {
        match self.config.measurement_mode {
            MeasurementMode::Exact => Ok(energy(rho, self.h0)?),
            _ => self.probe_estimate(rho, self.u_energy_probe.as_ref().unwrap(), rng),
        }
    }

    /// Channels applied in `phase`: always-on first, then (after the fixed
    /// gates) the phase-exclusive ones.
    fn channel_plan(&self, phase: PhaseTag) -> (Vec<&EngineChannel>, Vec<&EngineChannel>) {
        if self.config.drive_application == DriveApplication::Combined {
            let combined: Vec<&EngineChannel> = self
                .combined
                .iter()
                .filter(|(p, _)| *p == phase)
                .map(|(_, ch)| ch)
                .collect();
            return (Vec::new(), combined);
        }
        let head: Vec<&EngineChannel> = self
            .channels
            .iter()
            .filter(|ch| ch.active_phase == ChannelPhase::Both)
            .collect();
        let tail: Vec<&EngineChannel> = self
            .channels
            .iter()
            .filter(|ch| ch.active_phase != ChannelPhase::Both && ch.active_phase.active_in(phase))
            .collect();
        (head, tail)
    }

    fn apply_fixed_gates(
        &self,
        rho: DensityMatrix,
        phase: PhaseTag,
    ) -> Result<DensityMatrix, FeedbackError> {
        let mut rho = rho;
        for slot in &self.config.drive_set.fixed_gates {
            if slot.active_phase.active_in(phase) {
                match slot.kind {
                    crate::hamiltonians::FixedGateKind::ZDelta => {
                        rho = rho.evolved(&self.z_delta_gate)?;
                    }
                }
            }
        }
        Ok(rho)
    }

    fn step(
        &self,
        rho: &DensityMatrix,
        index: usize,
        phase: PhaseTag,
        rng: &mut Rng,
    ) -> Result<(DensityMatrix, IterationRecord), FeedbackError> {
        let (head, tail) = self.channel_plan(phase);
        let mut betas = Vec::with_capacity(head.len() + tail.len());
        let mut current = rho.clone();

        let mut upfront = Vec::new();
        if self.config.beta_schedule == BetaSchedule::Upfront {
            for ch in head.iter().chain(tail.iter()) {
                upfront.push(self.measure_beta(&current, ch, rng)?);
            }
        }
        let mut upfront_iter = upfront.into_iter();

        let mut apply_group = |group: &[&EngineChannel],
                               current: &mut DensityMatrix,
                               rng: &mut Rng|
         -> Result<(), FeedbackError> {
            for ch in group {
                let beta = match self.config.beta_schedule {
                    BetaSchedule::Sequential => self.measure_beta(current, ch, rng)?,
                    BetaSchedule::Upfront => upfront_iter.next().expect("one β per channel"),
                };
                let tau = ch.step_time.unwrap_or(self.config.tau);
                let u = ch.generator_eig.exp_unitary(beta * tau);
                *current = current.evolved(&u)?;
                betas.push((ch.label.clone(), beta));
            }
            Ok(())
        };

        apply_group(&head, &mut current, rng)?;
        current = self.apply_fixed_gates(current, phase)?;
        apply_group(&tail, &mut current, rng)?;

        current = inject_unitary_error(&current, self.config.error_model, rng)?;

        let energy_after = self.measure_energy(&current, rng)?;
        if !energy_after.is_finite() {
            return Err(FeedbackError::NonFiniteEnergy {
                index,
                energy: energy_after,
            });
        }
        let record = IterationRecord {
            index,
            phase,
            betas,
            energy_after,
            fidelity_to_initial: overlap_fidelity(&self.initial, &current)?,
            fidelity_to_passive: overlap_fidelity(&self.target_passive, &current)?,
        };
        Ok((current, record))
    }
}

/// One feedback iteration as a standalone operation. Fidelities in the
/// record are measured against the input state and its own passive state;
/// [`run_fqergo`] keeps run-level references instead.
pub fn fqergo_step(
    rho: &DensityMatrix,
    h0: &Hamiltonian,
    phase: PhaseTag,
    config: &FqergoConfig,
    rng: &mut Rng,
) -> Result<(DensityMatrix, IterationRecord), FeedbackError> {
    let ctx = RunContext::new(rho, h0, config)?;
    ctx.step(rho, 1, phase, rng)
}

/// Run the full phase schedule from `rho0`, recording every iteration.
pub fn run_fqergo(
    rho0: &DensityMatrix,
    h0: &Hamiltonian,
    config: &FqergoConfig,
) -> Result<Trajectory, FeedbackError> {
    let ctx = RunContext::new(rho0, h0, config)?;
    let mut rng = Rng::new(config.seed);
    let initial_energy = ctx.measure_energy(rho0, &mut rng)?;

    let mut records: Vec<IterationRecord> = Vec::new();
    let mut current = rho0.clone();
    let mut index = 0;
    let mut local_end_energy = None;
    let mut saw_global = false;
    for &(phase, count) in &config.phases {
        for _ in 0..count {
            index += 1;
            let (next, record) = ctx.step(&current, index, phase, &mut rng)?;
            current = next;
            records.push(record);
        }
        match phase {
            PhaseTag::Local => {
                local_end_energy = Some(records.last().expect("count ≥ 1").energy_after)
            }
            PhaseTag::Global => saw_global = true,
        }
    }

    let final_energy = records.last().expect("schedule is nonempty").energy_after;
    Ok(Trajectory {
        initial_energy,
        estimated_ergotropy_local: local_end_energy.map(|e| initial_energy - e),
        estimated_ergotropy_global: saw_global.then_some(initial_energy - final_energy),
        records,
        final_state: current,
    })
}

/// Apply the configured unitary error model. `None` returns the state
/// unchanged.
pub fn inject_unitary_error(
    rho: &DensityMatrix,
    model: ErrorModel,
    rng: &mut Rng,
) -> Result<DensityMatrix, FeedbackError> {
    match model {
        ErrorModel::None => Ok(rho.clone()),
        ErrorModel::RandomRotation { angle_deg } => {
            let half = angle_deg.to_radians() / 2.0;
            let factors: Vec<ComplexMatrix> = (0..rho.n_qubits())
                .map(|_| {
                    let [nx, ny, nz] = rng.unit_vector3();
                    rotation_u2(half * nx, half * ny, half * nz)
                })
                .collect();
            let refs: Vec<&ComplexMatrix> = factors.iter().collect();
            let u = kron_all(&refs)?;
            Ok(rho.evolved(&u)?)
        }
        ErrorModel::RandomHamiltonian { eta_deg } => {
            let eta = eta_deg.to_radians();
            let h = random_unit_norm_hermitian(rho.dim(), rng)?;
            let u = hermitian_eig(&h)?.exp_unitary(eta);
            Ok(rho.evolved(&u)?)
        }
    }
}

/// e^{-i(aσ_x + bσ_y + cσ_z)} in closed form.
fn rotation_u2(a: f64, b: f64, cz: f64) -> ComplexMatrix {
    use crate::linalg::c;
    let r = (a * a + b * b + cz * cz).sqrt();
    let (cos_r, sinc) = if r < 1e-12 { (1.0, 1.0) } else { (r.cos(), r.sin() / r) };
    ComplexMatrix::from_rows(&[
        vec![c(cos_r, -cz * sinc), c(-b * sinc, -a * sinc)],
        vec![c(b * sinc, -a * sinc), c(cos_r, cz * sinc)],
    ])
}

/// Random Hermitian matrix scaled to unit (Frobenius) norm. The spectral
/// norm of the result is ≤ 1, so ‖e^{-iHη} - I‖ ≤ η still holds.
fn random_unit_norm_hermitian(dim: usize, rng: &mut Rng) -> Result<ComplexMatrix, FeedbackError> {
    use crate::linalg::c;
    let inv_sqrt2 = 0.5f64.sqrt();
    let mut h = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        h.set(i, i, c(rng.next_normal(), 0.0));
        for j in (i + 1)..dim {
            let z = c(rng.next_normal() * inv_sqrt2, rng.next_normal() * inv_sqrt2);
            h.set(i, j, z);
            h.set(j, i, z.conj());
        }
    }
    let norm = h
        .entries()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(1e-300);
    Ok(h.scale(c(1.0 / norm, 0.0)))
}

/// Smallest iteration count k (0 = the initial state) from which the energy
/// stays within `tol` of `target_energy` for `window` consecutive positions.
pub fn detect_convergence(
    traj: &Trajectory,
    target_energy: f64,
    tol: f64,
    window: usize,
) -> Option<usize> {
    assert!(tol > 0.0 && window >= 1);
    let seq = traj.energy_sequence();
    if seq.len() < window {
        return None;
    }
    'outer: for k in 0..=(seq.len() - window) {
        for value in &seq[k..k + window] {
            if (value - target_energy).abs() > tol {
                continue 'outer;
            }
        }
        return Some(k);
    }
    None
}

/// Trajectory CSV: `k,phase,beta_<label>...,energy,fid_initial,fid_passive`.
/// Channels not applied in an iteration's phase leave their cell empty.
pub fn trajectory_csv(traj: &Trajectory, beta_labels: &[String]) -> String {
    let mut out = String::from("k,phase");
    for label in beta_labels {
        out.push_str(&format!(",beta_{label}"));
    }
    out.push_str(",energy,fid_initial,fid_passive\n");
    for r in &traj.records {
        out.push_str(&format!("{},{}", r.index, r.phase));
        for label in beta_labels {
            match r.betas.iter().find(|(l, _)| l == label) {
                Some((_, beta)) => out.push_str(&format!(",{beta}")),
                None => out.push(','),
            }
        }
        out.push_str(&format!(
            ",{},{},{}\n",
            r.energy_after, r.fidelity_to_initial, r.fidelity_to_passive
        ));
    }
    out
}

/// The β column labels a config will produce, in application order.
pub fn beta_labels(config: &FqergoConfig) -> Vec<String> {
    match config.drive_application {
        DriveApplication::Combined => vec!["combined".to_string()],
        DriveApplication::Sequential => config
            .drive_set
            .terms
            .iter()
            .map(|t| t.label.clone())
            .collect(),
    }
}
