//! Ancilla-probe expectation estimation.
//!
//! A probe qubit prepared in |+⟩ controls a gate on the system register;
//! reading σ_x or σ_y on the probe afterwards encodes a system expectation
//! value. The probe is the leftmost tensor factor, and every reading acts on
//! a fresh copy of the system state — probing never disturbs the state the
//! feedback loop carries forward.
//!
//! Two circuits:
//! - controlled-U for unitary U: ⟨σ_x⟩_probe = Re⟨U⟩_ρ (exact);
//! - controlled-e^{-iαA} for Hermitian A: ⟨σ_y⟩_probe = -⟨sin(αA)⟩_ρ, so
//!   -⟨σ_y⟩/α estimates ⟨A⟩ with an O(α²) small-angle bias.

use crate::linalg::{
    c, hermitian_eig, kron, trace_product, ComplexMatrix, LinalgError, MAX_DIM,
};
use crate::hamiltonians::{sigma_x, sigma_y};
use crate::rng::Rng;
use crate::states::DensityMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const UNITARY_TOL: f64 = 1e-10;

/// Smallest and largest admissible Hermitian-encoding angle. Larger values
/// void the small-angle expansion the estimator relies on.
pub const ALPHA_MIN: f64 = 0.0;
pub const ALPHA_MAX: f64 = 0.2;

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("controlled gate on dim {dim} exceeds the supported limit of {MAX_DIM}")]
    DimensionLimit { dim: usize },
    #[error("encoding angle α = {alpha} outside ({ALPHA_MIN}, {ALPHA_MAX}]")]
    AlphaOutOfRange { alpha: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("shot count must be at least 1")]
    NoShots,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Probe observable read out after the controlled gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProbeObservable {
    SigmaX,
    SigmaY,
}

/// One probe readout: the observable, its expectation (or shot-averaged)
/// value, and the shot count when finite sampling was applied.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProbeReading {
    pub observable: ProbeObservable,
    pub value: f64,
    pub n_shots: Option<u64>,
}

/// Block-diagonal controlled gate [[I, 0], [0, u]] with the probe qubit as
/// the control (leftmost factor).
pub fn controlled_gate(u: &ComplexMatrix) -> Result<ComplexMatrix, ProbeError> {
    u.check_unitary(UNITARY_TOL)?;
    let d = u.rows();
    if 2 * d > MAX_DIM {
        return Err(ProbeError::DimensionLimit { dim: 2 * d });
    }
    let mut out = ComplexMatrix::identity(2 * d);
    for i in 0..d {
        for j in 0..d {
            out.set(d + i, d + j, u.get(i, j));
        }
    }
    Ok(out)
}

/// Joint probe⊗system state after the controlled gate, starting from
/// |+⟩⟨+| ⊗ ρ.
fn probed_state(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<ComplexMatrix, ProbeError> {
    if u.rows() != rho.dim() {
        return Err(ProbeError::DimMismatch {
            left: u.rows(),
            right: rho.dim(),
        });
    }
    let plus = ComplexMatrix::from_fn(2, 2, |_, _| c(0.5, 0.0));
    let joint = kron(&plus, rho.matrix()).map_err(|_| ProbeError::DimensionLimit {
        dim: 2 * rho.dim(),
    })?;
    let cu = controlled_gate(u)?;
    Ok(cu.matmul(&joint).matmul(&cu.adjoint()))
}

fn probe_pauli_expectation(
    joint: &ComplexMatrix,
    observable: ProbeObservable,
) -> Result<f64, ProbeError> {
    let d = joint.rows() / 2;
    let pauli = match observable {
        ProbeObservable::SigmaX => sigma_x(),
        ProbeObservable::SigmaY => sigma_y(),
    };
    let op = kron(&pauli, &ComplexMatrix::identity(d))?;
    let value = trace_product(&op, joint).re;
    debug_assert!(value.abs() <= 1.0 + 1e-12, "probe expectation {value} out of range");
    Ok(value)
}

/// Simulate the controlled-U circuit and return ⟨σ_x⟩_probe = Re Tr(Uρ).
pub fn probe_expect_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<f64, ProbeError> {
    let reading = read_unitary(rho, u)?;
    Ok(reading.value)
}

/// Raw σ_x probe reading for a controlled-U circuit.
pub fn read_unitary(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<ProbeReading, ProbeError> {
    let joint = probed_state(rho, u)?;
    Ok(ProbeReading {
        observable: ProbeObservable::SigmaX,
        value: probe_pauli_expectation(&joint, ProbeObservable::SigmaX)?,
        n_shots: None,
    })
}

/// Raw σ_y probe reading for a controlled-e^{-iαA} circuit; equals
/// -⟨sin(αA)⟩_ρ.
pub fn read_hermitian(
    rho: &DensityMatrix,
    a: &ComplexMatrix,
    alpha: f64,
) -> Result<ProbeReading, ProbeError> {
    if !(alpha > ALPHA_MIN && alpha <= ALPHA_MAX) {
        return Err(ProbeError::AlphaOutOfRange { alpha });
    }
    let eig = hermitian_eig(a)?;
    read_encoded(rho, &eig.exp_unitary(alpha))
}

/// σ_y probe reading for a pre-built encoding unitary (the feedback engine
/// caches e^{-iαA} across iterations and calls this directly).
pub fn read_encoded(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<ProbeReading, ProbeError> {
    let joint = probed_state(rho, u)?;
    Ok(ProbeReading {
        observable: ProbeObservable::SigmaY,
        value: probe_pauli_expectation(&joint, ProbeObservable::SigmaY)?,
        n_shots: None,
    })
}

/// Probe estimate of ⟨A⟩ for Hermitian A: -⟨σ_y⟩_probe/α. The exact value of
/// the circuit is ⟨sin(αA)⟩/α, so the bias is O(α²).
pub fn probe_expect_hermitian(
    rho: &DensityMatrix,
    a: &ComplexMatrix,
    alpha: f64,
) -> Result<f64, ProbeError> {
    let reading = read_hermitian(rho, a, alpha)?;
    Ok(-reading.value / alpha)
}

/// Average of `n_shots` ±1 draws with P(+1) = (1 + expectation)/2. Unbiased
/// and deterministic in the RNG stream.
pub fn shot_sample(expectation: f64, n_shots: u64, rng: &mut Rng) -> Result<f64, ProbeError> {
    if n_shots == 0 {
        return Err(ProbeError::NoShots);
    }
    debug_assert!(expectation.abs() <= 1.0 + 1e-12);
    let p = ((1.0 + expectation) / 2.0).clamp(0.0, 1.0);
    let mut plus = 0u64;
    for _ in 0..n_shots {
        if rng.next_bool(p) {
            plus += 1;
        }
    }
    Ok(2.0 * plus as f64 / n_shots as f64 - 1.0)
}

/// Apply shot noise to a reading.
pub fn sample_reading(
    reading: &ProbeReading,
    n_shots: u64,
    rng: &mut Rng,
) -> Result<ProbeReading, ProbeError> {
    Ok(ProbeReading {
        observable: reading.observable,
        value: shot_sample(reading.value, n_shots, rng)?,
        n_shots: Some(n_shots),
    })
}
