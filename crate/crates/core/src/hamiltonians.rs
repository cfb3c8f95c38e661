//! System Hamiltonians, drive sets, and the tilted phase gate.
//!
//! ω₀ = 1 sets the energy scale. Pauli builders return σ matrices with
//! eigenvalues ±1; drive generators use the spin-1/2 normalization
//! I_γ = σ_γ/2 (two-body cross terms I_γ⊗I_γ' accordingly carry 1/4). The
//! default gain w = 1 and the useful step-time window ω₀τ ≈ 1..3 are
//! calibrated against that normalization: one feedback step rotates a
//! single qubit by about (wτ/2)·sin θ, which contracts monotonically for
//! ω₀τ < 2. Doubling the generators to bare σ would push the same τ values
//! into the oscillatory regime. Every builder asserts Hermiticity of its
//! output at 1e-12.

use crate::linalg::{
    c, commutator_i, hermitian_eig, kron, kron_all, trace_product, unitary_from_generator,
    ComplexMatrix, HermitianEig, LinalgError,
};
use crate::states::DensityMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const BUILDER_HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum HamiltonianError {
    #[error("qubit index {target} out of range for {n_qubits} qubits")]
    QubitOutOfRange { target: usize, n_qubits: usize },
    #[error("ω₀ must be positive, got {omega0}")]
    NonPositiveOmega { omega0: f64 },
    #[error("|J| = {j} must be smaller than |ω₀| = {omega0}")]
    CouplingTooLarge { j: f64, omega0: f64 },
    #[error("drive set for {n_qubits} qubits is not supported (expected {expected})")]
    UnsupportedQubitCount { n_qubits: usize, expected: &'static str },
    #[error("unknown model name `{name}` (known: 1q-default, 2q-default, 2q-global)")]
    UnknownModel { name: String },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("energy expectation has imaginary residue {residue:.3e}")]
    ImaginaryEnergy { residue: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Pauli axis selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]])
}

fn sigma(axis: Axis) -> ComplexMatrix {
    match axis {
        Axis::X => sigma_x(),
        Axis::Y => sigma_y(),
        Axis::Z => sigma_z(),
    }
}

/// I⊗…⊗σ_axis⊗…⊗I with the Pauli at `target` (qubit 0 = leftmost factor).
pub fn pauli_op(axis: Axis, target: usize, n_qubits: usize) -> Result<ComplexMatrix, HamiltonianError> {
    if target >= n_qubits {
        return Err(HamiltonianError::QubitOutOfRange { target, n_qubits });
    }
    let id = ComplexMatrix::identity(2);
    let s = sigma(axis);
    let factors: Vec<&ComplexMatrix> = (0..n_qubits)
        .map(|q| if q == target { &s } else { &id })
        .collect();
    Ok(kron_all(&factors)?)
}

/// Embedded spin-1/2 operator I_axis = σ_axis/2 at `target`.
pub fn spin_op(axis: Axis, target: usize, n_qubits: usize) -> Result<ComplexMatrix, HamiltonianError> {
    Ok(pauli_op(axis, target, n_qubits)?.scale(c(0.5, 0.0)))
}

/// System Hamiltonian on `n` qubits (Hermitian within 1e-12 by construction).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Hamiltonian {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl Hamiltonian {
    /// Wrap an explicit Hermitian matrix (used for oracle certificates on
    /// dimensions where no named model exists).
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self, HamiltonianError> {
        if matrix.rows() != 1 << n_qubits {
            return Err(HamiltonianError::DimMismatch {
                left: matrix.rows(),
                right: 1 << n_qubits,
            });
        }
        matrix.check_hermitian(1e-10)?;
        Ok(Hamiltonian { n_qubits, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn eig(&self) -> HermitianEig {
        hermitian_eig(&self.matrix).expect("Hamiltonian is Hermitian by construction")
    }
}

/// H₀ = ω₀(I - σ_z)/2 = diag(0, ω₀).
pub fn single_qubit_h0(omega0: f64) -> Result<Hamiltonian, HamiltonianError> {
    if omega0 <= 0.0 {
        return Err(HamiltonianError::NonPositiveOmega { omega0 });
    }
    let m = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(omega0, 0.0)]);
    debug_assert!(m.hermiticity_error() < BUILDER_HERMITICITY_TOL);
    Ok(Hamiltonian { n_qubits: 1, matrix: m })
}

/// H₀ = ω₀(I⊗I - (σ_z⊗I + I⊗σ_z)/2) + J·σ_z⊗σ_z,
/// i.e. diag(J, ω₀-J, ω₀-J, 2ω₀+J) on |00⟩,|01⟩,|10⟩,|11⟩.
pub fn two_qubit_h0(omega0: f64, j: f64) -> Result<Hamiltonian, HamiltonianError> {
    if omega0 <= 0.0 {
        return Err(HamiltonianError::NonPositiveOmega { omega0 });
    }
    if j.abs() >= omega0.abs() {
        return Err(HamiltonianError::CouplingTooLarge { j, omega0 });
    }
    let m = ComplexMatrix::diagonal(&[
        c(j, 0.0),
        c(omega0 - j, 0.0),
        c(omega0 - j, 0.0),
        c(2.0 * omega0 + j, 0.0),
    ]);
    debug_assert!(m.hermiticity_error() < BUILDER_HERMITICITY_TOL);
    Ok(Hamiltonian { n_qubits: 2, matrix: m })
}

/// Which iteration phase a drive channel or fixed gate participates in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChannelPhase {
    Local,
    Global,
    Both,
}

impl ChannelPhase {
    pub fn active_in(self, phase: PhaseTag) -> bool {
        match self {
            ChannelPhase::Both => true,
            ChannelPhase::Local => phase == PhaseTag::Local,
            ChannelPhase::Global => phase == PhaseTag::Global,
        }
    }
}

/// Phase of the extraction schedule currently running.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseTag {
    Local,
    Global,
}

impl std::fmt::Display for PhaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PhaseTag::Local => write!(f, "local"),
            PhaseTag::Global => write!(f, "global"),
        }
    }
}

/// One feedback-controlled drive channel: a Hermitian generator with its own
/// per-iteration coefficient. The generator's eigendecomposition is cached so
/// the engine exponentiates with two small matmuls per step.
///
/// A channel may carry its own fixed step time (the two-qubit cross drive
/// runs at a hardware-style constant τ_xy); channels without one use the
/// run's τ.
#[derive(Debug, Clone)]
pub struct DriveTerm {
    pub label: String,
    pub generator: ComplexMatrix,
    pub active_phase: ChannelPhase,
    pub step_time: Option<f64>,
    eig: HermitianEig,
}

impl DriveTerm {
    pub fn new(
        label: impl Into<String>,
        generator: ComplexMatrix,
        active_phase: ChannelPhase,
    ) -> Result<Self, HamiltonianError> {
        generator.check_hermitian(1e-10)?;
        let eig = hermitian_eig(&generator)?;
        Ok(DriveTerm {
            label: label.into(),
            generator,
            active_phase,
            step_time: None,
            eig,
        })
    }

    pub fn with_step_time(mut self, tau: f64) -> Self {
        self.step_time = Some(tau);
        self
    }

    /// e^{-i·s·generator}.
    pub fn unitary(&self, s: f64) -> ComplexMatrix {
        self.eig.exp_unitary(s)
    }
}

/// Fixed (non-feedback) gates applied once per iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedGateKind {
    /// The tilted phase gate Z_δ; the angle δ comes from the run config.
    ZDelta,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FixedGateSlot {
    pub kind: FixedGateKind,
    pub active_phase: ChannelPhase,
}

/// Whether multi-qubit local drives are collective (one channel per axis,
/// Σ_i σ_γ^i) or split per qubit (one channel per axis per qubit, each with
/// its own coefficient). Collective channels apply the same rotation to all
/// qubits; split channels generate the full local unitary group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalChannels {
    Collective,
    PerQubit,
}

/// Ordered drive channels plus fixed gates. Within a global-phase iteration
/// the engine applies: channels active in both phases, then fixed gates, then
/// global-only channels.
#[derive(Debug, Clone)]
pub struct DriveSet {
    n_qubits: usize,
    pub terms: Vec<DriveTerm>,
    pub fixed_gates: Vec<FixedGateSlot>,
}

impl DriveSet {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Channels participating in `phase`, in application order.
    pub fn active_terms(&self, phase: PhaseTag) -> impl Iterator<Item = &DriveTerm> {
        self.terms.iter().filter(move |t| t.active_phase.active_in(phase))
    }
}

fn collective_axis_term(axis: Axis, n_qubits: usize) -> Result<ComplexMatrix, HamiltonianError> {
    let mut sum = spin_op(axis, 0, n_qubits)?;
    for q in 1..n_qubits {
        sum = sum.add(&spin_op(axis, q, n_qubits)?);
    }
    Ok(sum)
}

/// Local drive set: X and Y channels Σ_i I_{x,y}^i, one coefficient each,
/// active in both phases.
pub fn drive_set_local(n_qubits: usize) -> Result<DriveSet, HamiltonianError> {
    drive_set_local_with(n_qubits, LocalChannels::Collective)
}

/// Local drive set with a choice of collective or per-qubit channels.
pub fn drive_set_local_with(
    n_qubits: usize,
    channels: LocalChannels,
) -> Result<DriveSet, HamiltonianError> {
    if !(1..=2).contains(&n_qubits) {
        return Err(HamiltonianError::UnsupportedQubitCount {
            n_qubits,
            expected: "1 or 2",
        });
    }
    let mut terms = Vec::new();
    match channels {
        LocalChannels::Collective => {
            for (axis, label) in [(Axis::X, "X"), (Axis::Y, "Y")] {
                terms.push(DriveTerm::new(
                    label,
                    collective_axis_term(axis, n_qubits)?,
                    ChannelPhase::Both,
                )?);
            }
        }
        LocalChannels::PerQubit => {
            for q in 0..n_qubits {
                for (axis, name) in [(Axis::X, "X"), (Axis::Y, "Y")] {
                    let label = if n_qubits == 1 {
                        name.to_string()
                    } else {
                        format!("{name}{q}")
                    };
                    terms.push(DriveTerm::new(
                        label,
                        spin_op(axis, q, n_qubits)?,
                        ChannelPhase::Both,
                    )?);
                }
            }
        }
    }
    Ok(DriveSet {
        n_qubits,
        terms,
        fixed_gates: Vec::new(),
    })
}

/// Step time of the two-qubit cross channel. Unlike the local channels,
/// which follow the run's τ, the cross drive keeps a constant τ_xy the way
/// the hardware realization does; this value sets its settle rate.
pub const DEFAULT_TAU_XY: f64 = 0.4;

/// Global drive set for two qubits: the local channels (both phases), the
/// symmetric cross term I_x⊗I_y + I_y⊗I_x (global phase only, fixed step
/// time τ_xy), and the fixed Z_δ gate (global phase only).
pub fn drive_set_global(n_qubits: usize) -> Result<DriveSet, HamiltonianError> {
    drive_set_global_with(n_qubits, LocalChannels::Collective)
}

pub fn drive_set_global_with(
    n_qubits: usize,
    channels: LocalChannels,
) -> Result<DriveSet, HamiltonianError> {
    if n_qubits != 2 {
        return Err(HamiltonianError::UnsupportedQubitCount {
            n_qubits,
            expected: "2",
        });
    }
    let mut set = drive_set_local_with(2, channels)?;
    let xy = kron(&sigma_x(), &sigma_y())?
        .add(&kron(&sigma_y(), &sigma_x())?)
        .scale(c(0.25, 0.0));
    set.terms.push(DriveTerm::new("XY", xy, ChannelPhase::Global)?.with_step_time(DEFAULT_TAU_XY));
    set.fixed_gates.push(FixedGateSlot {
        kind: FixedGateKind::ZDelta,
        active_phase: ChannelPhase::Global,
    });
    Ok(set)
}

/// Tilted phase gate
/// Z_δ = e^{-iδ(I⊗σ_y)} [|0⟩⟨0|⊗I + |1⟩⟨1|⊗e^{-iσ_z π/2}] e^{iδ(I⊗σ_y)}.
///
/// At δ = 0 this is diag(1, 1, -i, i); the tilt breaks the total-σ_z
/// symmetry of the two-qubit Hamiltonian so global drives can connect its
/// otherwise invariant subspaces.
pub fn z_delta(delta: f64) -> ComplexMatrix {
    let minus_i = c(0.0, -1.0);
    let plus_i = c(0.0, 1.0);
    let core = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), minus_i, plus_i]);
    let r = unitary_from_generator(&sigma_y(), delta).expect("σ_y is Hermitian");
    let tilt = kron(&ComplexMatrix::identity(2), &r).expect("4x4 within limit");
    tilt.matmul(&core).matmul(&tilt.adjoint())
}

/// E = Tr(H₀ρ); rejects a significant imaginary residue.
pub fn energy(rho: &DensityMatrix, h0: &Hamiltonian) -> Result<f64, HamiltonianError> {
    if rho.dim() != h0.dim() {
        return Err(HamiltonianError::DimMismatch {
            left: rho.dim(),
            right: h0.dim(),
        });
    }
    let tr = trace_product(h0.matrix(), rho.matrix());
    if tr.im.abs() > 1e-10 {
        return Err(HamiltonianError::ImaginaryEnergy { residue: tr.im });
    }
    Ok(tr.re)
}

/// Commutator observable C_d = i[H_d, H₀] whose expectation sets the
/// feedback coefficient.
pub fn commutator_observable(drive: &DriveTerm, h0: &Hamiltonian) -> ComplexMatrix {
    commutator_i(&drive.generator, h0.matrix())
}

/// Named Hamiltonian/drive-set models addressable from the CLI.
pub fn model_by_name(name: &str) -> Result<(Hamiltonian, DriveSet), HamiltonianError> {
    model_by_name_with(name, LocalChannels::Collective)
}

pub fn model_by_name_with(
    name: &str,
    channels: LocalChannels,
) -> Result<(Hamiltonian, DriveSet), HamiltonianError> {
    match name {
        "1q-default" => Ok((single_qubit_h0(1.0)?, drive_set_local_with(1, channels)?)),
        "2q-default" => Ok((two_qubit_h0(1.0, 0.01)?, drive_set_local_with(2, channels)?)),
        "2q-global" => Ok((two_qubit_h0(1.0, 0.01)?, drive_set_global_with(2, channels)?)),
        other => Err(HamiltonianError::UnknownModel { name: other.into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{density_from_bloch, DensityMatrix};

    #[test]
    fn pauli_op_placement() {
        let z0 = pauli_op(Axis::Z, 0, 1).unwrap();
        assert!(z0.max_abs_diff(&sigma_z()) < 1e-15);

        let x1 = pauli_op(Axis::X, 1, 2).unwrap();
        let expect = kron(&ComplexMatrix::identity(2), &sigma_x()).unwrap();
        assert!(x1.max_abs_diff(&expect) < 1e-15);

        assert!(pauli_op(Axis::Y, 2, 2).is_err());
    }

    #[test]
    fn pauli_op_squares_to_identity() {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            for target in 0..2 {
                let p = pauli_op(axis, target, 2).unwrap();
                assert!(p.matmul(&p).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-14);
            }
        }
    }

    #[test]
    fn single_qubit_h0_values() {
        let h = single_qubit_h0(1.0).unwrap();
        assert!(h.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0)])) < 1e-15);
        let ground = DensityMatrix::basis_state(1, 0);
        let excited = DensityMatrix::basis_state(1, 1);
        assert!(energy(&ground, &h).unwrap().abs() < 1e-14);
        assert!((energy(&excited, &h).unwrap() - 1.0).abs() < 1e-14);
        assert!(single_qubit_h0(0.0).is_err());
        assert!(single_qubit_h0(-1.0).is_err());
    }

    #[test]
    fn two_qubit_h0_values() {
        let h = two_qubit_h0(1.0, 0.01).unwrap();
        let expect = ComplexMatrix::diagonal(&[
            c(0.01, 0.0),
            c(0.99, 0.0),
            c(0.99, 0.0),
            c(2.01, 0.0),
        ]);
        assert!(h.matrix().max_abs_diff(&expect) < 1e-14);

        let uncoupled = two_qubit_h0(1.0, 0.0).unwrap();
        let expect0 = ComplexMatrix::diagonal(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(uncoupled.matrix().max_abs_diff(&expect0) < 1e-14);

        assert!(h.matrix().hermiticity_error() < 1e-12);
        assert!(two_qubit_h0(1.0, 1.0).is_err());
    }

    #[test]
    fn two_qubit_h0_energies() {
        let h = two_qubit_h0(1.0, 0.01).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((energy(&mixed, &h).unwrap() - 1.0).abs() < 1e-12);
        let bell = DensityMatrix::bell_phi_plus();
        assert!((energy(&bell, &h).unwrap() - 1.01).abs() < 1e-12);
    }

    #[test]
    fn two_qubit_h0_commutes_with_total_z() {
        let h = two_qubit_h0(1.0, 0.01).unwrap();
        let total_z = pauli_op(Axis::Z, 0, 2)
            .unwrap()
            .add(&pauli_op(Axis::Z, 1, 2).unwrap());
        let comm = commutator_i(h.matrix(), &total_z);
        assert!(comm.max_abs() < 1e-12);
    }

    #[test]
    fn local_drive_terms() {
        // Spin normalization: X channel is I_x = σ_x/2 per qubit.
        let one = drive_set_local(1).unwrap();
        assert_eq!(one.terms.len(), 2);
        assert!(one.terms[0].generator.max_abs_diff(&sigma_x().scale(c(0.5, 0.0))) < 1e-15);
        assert!(one.terms[1].generator.max_abs_diff(&sigma_y().scale(c(0.5, 0.0))) < 1e-15);

        let two = drive_set_local(2).unwrap();
        let x_sum = spin_op(Axis::X, 0, 2)
            .unwrap()
            .add(&spin_op(Axis::X, 1, 2).unwrap());
        let y_sum = spin_op(Axis::Y, 0, 2)
            .unwrap()
            .add(&spin_op(Axis::Y, 1, 2).unwrap());
        assert!(two.terms[0].generator.max_abs_diff(&x_sum) < 1e-15);
        assert!(two.terms[1].generator.max_abs_diff(&y_sum) < 1e-15);

        for t in &two.terms {
            assert!(t.generator.hermiticity_error() < 1e-12);
            assert!(t.generator.trace().norm() < 1e-12);
        }
        assert!(drive_set_local(3).is_err());
    }

    #[test]
    fn per_qubit_drive_terms() {
        let set = drive_set_local_with(2, LocalChannels::PerQubit).unwrap();
        assert_eq!(set.terms.len(), 4);
        let labels: Vec<&str> = set.terms.iter().map(|t| t.label.as_str()).collect();
        assert_eq!(labels, ["X0", "Y0", "X1", "Y1"]);
        assert!(set.terms[2].generator.max_abs_diff(&spin_op(Axis::X, 1, 2).unwrap()) < 1e-15);
    }

    #[test]
    fn global_drive_set_structure() {
        let set = drive_set_global(2).unwrap();
        let xy = kron(&sigma_x(), &sigma_y())
            .unwrap()
            .add(&kron(&sigma_y(), &sigma_x()).unwrap())
            .scale(c(0.25, 0.0));
        let xy_term = set.terms.iter().find(|t| t.label == "XY").unwrap();
        assert!(xy_term.generator.max_abs_diff(&xy) < 1e-15);
        assert!(xy_term.generator.hermiticity_error() < 1e-12);
        assert!(xy_term.generator.trace().norm() < 1e-12);
        assert_eq!(xy_term.active_phase, ChannelPhase::Global);
        assert_eq!(set.fixed_gates.len(), 1);

        // Restricted to the local phase, the set matches drive_set_local(2).
        let local = drive_set_local(2).unwrap();
        let active: Vec<_> = set.active_terms(PhaseTag::Local).collect();
        assert_eq!(active.len(), local.terms.len());
        for (a, b) in active.iter().zip(&local.terms) {
            assert_eq!(a.label, b.label);
            assert!(a.generator.max_abs_diff(&b.generator) < 1e-15);
        }
        assert!(drive_set_global(1).is_err());
    }

    #[test]
    fn z_delta_at_zero() {
        let z0 = z_delta(0.0);
        let expect = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0)]);
        assert!(z0.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn z_delta_is_unitary() {
        for delta in [0.0, 0.1, 0.5, -0.3, 2.0] {
            let z = z_delta(delta);
            assert!(z.unitarity_error() < 1e-10, "δ = {delta}");
        }
    }

    #[test]
    fn z_delta_conjugation_structure() {
        // Z_δ = (I⊗R)·D·(I⊗R†) with R = e^{-iδσ_y} and D the δ=0 gate.
        let delta = 0.1;
        let r = unitary_from_generator(&sigma_y(), delta).unwrap();
        let tilt = kron(&ComplexMatrix::identity(2), &r).unwrap();
        let expect = tilt.matmul(&z_delta(0.0)).matmul(&tilt.adjoint());
        assert!(z_delta(delta).max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn energy_dim_mismatch() {
        let h = single_qubit_h0(1.0).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(energy(&rho, &h).is_err());
    }

    #[test]
    fn energy_real_for_generic_state() {
        let h = single_qubit_h0(1.0).unwrap();
        let rho = density_from_bloch(1.0, 0.7, 0.9).unwrap();
        let e = energy(&rho, &h).unwrap();
        assert!(e > 0.0 && e < 1.0);
    }

    #[test]
    fn named_models() {
        for name in ["1q-default", "2q-default", "2q-global"] {
            let (h, set) = model_by_name(name).unwrap();
            assert_eq!(h.dim(), 1 << set.n_qubits());
        }
        assert!(model_by_name("3q-default").is_err());
    }
}
