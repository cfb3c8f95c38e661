//! Exact ground truth for validation: passive states by spectral sorting,
//! exact ergotropy, both local-ergotropy definitions, and the ergotropy gap.
//!
//! The passive state pairs the descending eigenvalues of ρ with the
//! ascending eigenvalues of H₀ — the unitary minimum of Tr(UρU†H₀). For a
//! two-qubit system two "local" quantities are reported: the sum of the
//! reduced states' single-qubit ergotropies (used by the gap), and the
//! numerical minimum of the full energy over product unitaries U₁⊗U₂.

use crate::hamiltonians::{energy, single_qubit_h0, Hamiltonian, HamiltonianError};
use crate::linalg::{c, hermitian_eig, kron, trace_product_re, ComplexMatrix, LinalgError};
use crate::rng::Rng;
use crate::states::{partial_trace, validate_density, DensityMatrix, StateError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("dimension mismatch: state dim {state} vs Hamiltonian dim {hamiltonian}")]
    DimMismatch { state: usize, hamiltonian: usize },
    #[error("operation requires a two-qubit state, got {n_qubits} qubits")]
    NotTwoQubit { n_qubits: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
}

/// Exact reference values for one state/Hamiltonian pair.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub passive_state: DensityMatrix,
    pub minimizing_unitary: ComplexMatrix,
    pub passive_energy: f64,
    pub ergotropy: f64,
    pub local_sum_ergotropy: Option<f64>,
    pub local_opt_ergotropy: Option<f64>,
    pub gap: Option<f64>,
}

/// Passive state of ρ under H₀ and the unitary reaching it.
///
/// Eigenvector bases inside degenerate eigenvalue blocks are
/// solver-dependent; only the passive energy (and hence the ergotropy) is
/// contract-bearing, not the specific 𝓤.
pub fn passive_state(
    rho: &DensityMatrix,
    h0: &Hamiltonian,
) -> Result<(DensityMatrix, ComplexMatrix), OracleError> {
    if rho.dim() != h0.dim() {
        return Err(OracleError::DimMismatch {
            state: rho.dim(),
            hamiltonian: h0.dim(),
        });
    }
    let d = rho.dim();
    let rho_eig = hermitian_eig(rho.matrix())?;
    let h_eig = h0.eig();

    // Descending populations (eigensolver returns ascending; reverse).
    let populations: Vec<f64> = rho_eig.values.iter().rev().copied().collect();
    let diag: Vec<_> = populations.iter().map(|&p| c(p.max(0.0), 0.0)).collect();
    let passive_matrix = h_eig
        .vectors
        .matmul(&ComplexMatrix::diagonal(&diag))
        .matmul(&h_eig.vectors.adjoint());

    // 𝓤 = V_h · Rev · V_ρ†, sending the k-th-largest-population eigenvector
    // of ρ onto the k-th-lowest-energy eigenvector of H₀.
    let rev = ComplexMatrix::from_fn(d, d, |i, j| {
        if i + j == d - 1 {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    });
    let minimizing = h_eig
        .vectors
        .matmul(&rev)
        .matmul(&rho_eig.vectors.adjoint());

    let passive = validate_density(passive_matrix)?;
    Ok((passive, minimizing))
}

/// Ergotropy E(ρ) - E(ρᵖ): the unitarily extractable energy.
pub fn exact_ergotropy(rho: &DensityMatrix, h0: &Hamiltonian) -> Result<f64, OracleError> {
    let (passive, _) = passive_state(rho, h0)?;
    Ok(energy(rho, h0)? - energy(&passive, h0)?)
}

/// Sum of single-qubit ergotropies of the two reduced states, each against
/// the local Hamiltonian ω₀(I-σ_z)/2. This is the "local" term of the
/// ergotropy-gap definition.
pub fn exact_local_ergotropy_sum(rho12: &DensityMatrix, omega0: f64) -> Result<f64, OracleError> {
    if rho12.n_qubits() != 2 {
        return Err(OracleError::NotTwoQubit {
            n_qubits: rho12.n_qubits(),
        });
    }
    let h_local = single_qubit_h0(omega0)?;
    let r0 = partial_trace(rho12, &[0])?;
    let r1 = partial_trace(rho12, &[1])?;
    Ok(exact_ergotropy(&r0, &h_local)? + exact_ergotropy(&r1, &h_local)?)
}

/// Options for the product-unitary energy minimizer.
#[derive(Debug, Clone, Copy)]
pub struct LocalOptOptions {
    /// Number of seeded restarts (one of them is the deterministic
    /// Bloch-aligning start).
    pub restarts: usize,
    /// Nelder-Mead iteration cap per restart.
    pub max_iterations: usize,
    /// Energy tolerance declaring a restart converged.
    pub tolerance: f64,
    /// Seed for the random restart starting points.
    pub seed: u64,
}

impl Default for LocalOptOptions {
    fn default() -> Self {
        LocalOptOptions {
            restarts: 32,
            max_iterations: 400,
            tolerance: 1e-8,
            seed: 0x10ca1,
        }
    }
}

/// Result of the local-unitary optimization; `converged` is false when no
/// restart met the tolerance within its iteration budget, in which case
/// `ergotropy` still carries the best value found.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LocalOptResult {
    pub ergotropy: f64,
    pub converged: bool,
}

/// A U(2) element from four angles: e^{-i(aσ_x + bσ_y + cσ_z + d·I)}.
fn u2_from_angles(a: f64, b: f64, cz: f64, d: f64) -> ComplexMatrix {
    let r = (a * a + b * b + cz * cz).sqrt();
    let (cos_r, sinc) = if r < 1e-12 {
        (1.0, 1.0)
    } else {
        (r.cos(), r.sin() / r)
    };
    let phase = crate::linalg::C64::from_polar(1.0, -d);
    // cos r·I - i sinc·(aσ_x + bσ_y + cσ_z), all times e^{-id}.
    ComplexMatrix::from_rows(&[
        vec![
            phase * c(cos_r, -cz * sinc),
            phase * c(-b * sinc, -a * sinc),
        ],
        vec![
            phase * c(b * sinc, -a * sinc),
            phase * c(cos_r, cz * sinc),
        ],
    ])
}

/// Bloch vector of a single-qubit density matrix.
fn bloch_vector(rho: &DensityMatrix) -> [f64; 3] {
    let m = rho.matrix();
    let x = 2.0 * m.get(0, 1).re;
    let y = -2.0 * m.get(0, 1).im;
    let z = m.get(0, 0).re - m.get(1, 1).re;
    [x, y, z]
}

/// Angles (a,b,c) of the rotation taking this qubit's Bloch vector to +z,
/// i.e. the single-qubit passive-aligning unitary.
fn aligning_angles(rho: &DensityMatrix) -> [f64; 3] {
    let [x, y, z] = bloch_vector(rho);
    let norm = (x * x + y * y + z * z).sqrt();
    if norm < 1e-12 {
        return [0.0, 0.0, 0.0];
    }
    let (rx, ry, rz) = (x / norm, y / norm, z / norm);
    let sin_theta = (rx * rx + ry * ry).sqrt();
    if sin_theta < 1e-12 {
        if rz > 0.0 {
            return [0.0, 0.0, 0.0];
        }
        // Antipodal: π rotation about x.
        return [std::f64::consts::FRAC_PI_2, 0.0, 0.0];
    }
    let theta = sin_theta.atan2(rz);
    // Axis n̂ = (r̂ × ẑ)/|r̂ × ẑ| = (ry, -rx, 0)/sinθ; generator angle θ/2.
    let half = 0.5 * theta / sin_theta;
    [ry * half, -rx * half, 0.0]
}

fn product_energy(angles: &[f64; 8], rho: &ComplexMatrix, h0: &ComplexMatrix) -> f64 {
    let u1 = u2_from_angles(angles[0], angles[1], angles[2], angles[3]);
    let u2 = u2_from_angles(angles[4], angles[5], angles[6], angles[7]);
    let u = kron(&u1, &u2).expect("4x4 within limit");
    let moved = u.matmul(rho).matmul(&u.adjoint());
    trace_product_re(h0, &moved)
}

/// Nelder-Mead over the 8 product-unitary angles. Returns (best energy,
/// converged flag).
fn nelder_mead(
    start: [f64; 8],
    rho: &ComplexMatrix,
    h0: &ComplexMatrix,
    max_iterations: usize,
    tolerance: f64,
) -> (f64, bool) {
    const N: usize = 8;
    let f = |x: &[f64; 8]| product_energy(x, rho, h0);
    let mut simplex: Vec<([f64; 8], f64)> = Vec::with_capacity(N + 1);
    simplex.push((start, f(&start)));
    for i in 0..N {
        let mut p = start;
        p[i] += 0.3;
        simplex.push((p, f(&p)));
    }

    let mut converged = false;
    for _ in 0..max_iterations {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        if simplex[N].1 - simplex[0].1 < tolerance {
            converged = true;
            break;
        }
        let mut centroid = [0.0; N];
        for (p, _) in simplex.iter().take(N) {
            for i in 0..N {
                centroid[i] += p[i] / N as f64;
            }
        }
        let worst = simplex[N];
        let mut reflected = [0.0; N];
        for i in 0..N {
            reflected[i] = centroid[i] + (centroid[i] - worst.0[i]);
        }
        let fr = f(&reflected);
        if fr < simplex[0].1 {
            // Expand further along the reflection direction.
            let mut expanded = [0.0; N];
            for i in 0..N {
                expanded[i] = centroid[i] + 2.0 * (centroid[i] - worst.0[i]);
            }
            let fe = f(&expanded);
            simplex[N] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[N - 1].1 {
            simplex[N] = (reflected, fr);
        } else {
            let mut contracted = [0.0; N];
            for i in 0..N {
                contracted[i] = centroid[i] + 0.5 * (worst.0[i] - centroid[i]);
            }
            let fc = f(&contracted);
            if fc < worst.1 {
                simplex[N] = (contracted, fc);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    for (coord, anchor) in entry.0.iter_mut().zip(&best) {
                        *coord = anchor + 0.5 * (*coord - anchor);
                    }
                    entry.1 = f(&entry.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    (simplex[0].1, converged)
}

/// Local ergotropy over arbitrary product unitaries: E(ρ) minus the
/// multi-start Nelder-Mead minimum of Tr((U₁⊗U₂)ρ(U₁⊗U₂)†H₀).
pub fn exact_local_ergotropy_opt(
    rho12: &DensityMatrix,
    h0: &Hamiltonian,
) -> Result<LocalOptResult, OracleError> {
    exact_local_ergotropy_opt_with(rho12, h0, LocalOptOptions::default())
}

pub fn exact_local_ergotropy_opt_with(
    rho12: &DensityMatrix,
    h0: &Hamiltonian,
    options: LocalOptOptions,
) -> Result<LocalOptResult, OracleError> {
    if rho12.n_qubits() != 2 {
        return Err(OracleError::NotTwoQubit {
            n_qubits: rho12.n_qubits(),
        });
    }
    if h0.dim() != rho12.dim() {
        return Err(OracleError::DimMismatch {
            state: rho12.dim(),
            hamiltonian: h0.dim(),
        });
    }
    let initial = energy(rho12, h0)?;

    // Restart 0: align each qubit's Bloch vector to +z. This reaches the
    // uncoupled optimum exactly, so the result can never fall more than the
    // coupling bookkeeping below the reduced-state sum.
    let a0 = aligning_angles(&partial_trace(rho12, &[0])?);
    let a1 = aligning_angles(&partial_trace(rho12, &[1])?);
    let aligned: [f64; 8] = [a0[0], a0[1], a0[2], 0.0, a1[0], a1[1], a1[2], 0.0];

    let mut rng = Rng::new(options.seed);
    let mut best = f64::INFINITY;
    let mut any_converged = false;
    for restart in 0..options.restarts.max(1) {
        let start = if restart == 0 {
            aligned
        } else {
            let mut p = [0.0; 8];
            for v in p.iter_mut() {
                *v = (rng.next_f64() * 2.0 - 1.0) * std::f64::consts::PI;
            }
            p
        };
        let (value, converged) = nelder_mead(
            start,
            rho12.matrix(),
            h0.matrix(),
            options.max_iterations,
            options.tolerance,
        );
        any_converged |= converged;
        if value < best {
            best = value;
        }
    }
    Ok(LocalOptResult {
        ergotropy: initial - best,
        converged: any_converged,
    })
}

/// Ergotropy gap Δ = 𝓔(ρ₁₂ | two-qubit H₀) - Σᵢ 𝓔(ρᵢ | local H₀).
///
/// The J-coupling energy is counted only on the global side, so the gap may
/// dip slightly negative; anything below -2J is flagged by
/// [`gap_is_anomalous`].
pub fn exact_ergotropy_gap(
    rho12: &DensityMatrix,
    omega0: f64,
    j: f64,
) -> Result<f64, OracleError> {
    let h0 = crate::hamiltonians::two_qubit_h0(omega0, j)?;
    let global = exact_ergotropy(rho12, &h0)?;
    let local = exact_local_ergotropy_sum(rho12, omega0)?;
    Ok(global - local)
}

/// A gap below -2|J| cannot come from coupling bookkeeping and indicates an
/// inconsistent input.
pub fn gap_is_anomalous(gap: f64, j: f64) -> bool {
    gap < -2.0 * j.abs()
}

/// Oracle report for any state/Hamiltonian pair; local quantities are
/// filled only by [`oracle_report_two_qubit`].
pub fn oracle_report(rho: &DensityMatrix, h0: &Hamiltonian) -> Result<OracleReport, OracleError> {
    let (passive, minimizing) = passive_state(rho, h0)?;
    let passive_energy = energy(&passive, h0)?;
    let ergotropy = energy(rho, h0)? - passive_energy;
    Ok(OracleReport {
        passive_state: passive,
        minimizing_unitary: minimizing,
        passive_energy,
        ergotropy,
        local_sum_ergotropy: None,
        local_opt_ergotropy: None,
        gap: None,
    })
}

/// Full oracle report for a two-qubit state under two_qubit_h0(ω₀, J):
/// global ergotropy, both local variants, and the gap.
pub fn oracle_report_two_qubit(
    rho12: &DensityMatrix,
    omega0: f64,
    j: f64,
) -> Result<OracleReport, OracleError> {
    let h0 = crate::hamiltonians::two_qubit_h0(omega0, j)?;
    let mut report = oracle_report(rho12, &h0)?;
    let local_sum = exact_local_ergotropy_sum(rho12, omega0)?;
    let local_opt = exact_local_ergotropy_opt(rho12, &h0)?;
    report.local_sum_ergotropy = Some(local_sum);
    report.local_opt_ergotropy = Some(local_opt.ergotropy);
    report.gap = Some(report.ergotropy - local_sum);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::two_qubit_h0;
    use crate::linalg::haar_unitary;
    use crate::states::{density_from_bloch, random_density, random_pure};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn passive_of_excited_qubit() {
        let h0 = single_qubit_h0(1.0).unwrap();
        let excited = DensityMatrix::basis_state(1, 1);
        let (passive, u) = passive_state(&excited, &h0).unwrap();
        assert!(passive.matrix().max_abs_diff(DensityMatrix::basis_state(1, 0).matrix()) < 1e-12);
        // The minimizing unitary must actually implement the move.
        let moved = excited.evolved(&u).unwrap();
        assert!(moved.matrix().max_abs_diff(passive.matrix()) < 1e-12);
        assert!(u.unitarity_error() < 1e-10);
    }

    #[test]
    fn maximally_mixed_is_its_own_passive() {
        let h0 = single_qubit_h0(1.0).unwrap();
        let mixed = DensityMatrix::maximally_mixed(1);
        let (passive, _) = passive_state(&mixed, &h0).unwrap();
        assert!(passive.matrix().max_abs_diff(mixed.matrix()) < 1e-12);
    }

    #[test]
    fn bloch_family_passive_form() {
        // Passive state of (1-ε)I/2 + ε|ψ⟩⟨ψ| is (1-ε)I/2 + ε|0⟩⟨0|.
        let h0 = single_qubit_h0(1.0).unwrap();
        let mut rng = Rng::new(17);
        for _ in 0..20 {
            let theta = rng.next_f64() * PI;
            let phi = rng.next_f64() * 2.0 * PI;
            let eps = rng.next_f64();
            let rho = density_from_bloch(theta, phi, eps).unwrap();
            let (passive, _) = passive_state(&rho, &h0).unwrap();
            let expect = density_from_bloch(0.0, 0.0, eps).unwrap();
            assert!(passive.matrix().max_abs_diff(expect.matrix()) < 1e-10);
        }
    }

    #[test]
    fn ergotropy_examples() {
        let h0 = single_qubit_h0(1.0).unwrap();
        let excited = DensityMatrix::basis_state(1, 1);
        assert!((exact_ergotropy(&excited, &h0).unwrap() - 1.0).abs() < 1e-12);

        let rho = density_from_bloch(FRAC_PI_2, 0.0, 0.5).unwrap();
        assert!((exact_ergotropy(&rho, &h0).unwrap() - 0.25).abs() < 1e-12);

        let h2 = two_qubit_h0(1.0, 0.01).unwrap();
        let bell = DensityMatrix::bell_phi_plus();
        assert!((exact_ergotropy(&bell, &h2).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ergotropy_closed_form_bloch() {
        // 𝓔 = ω₀·ε·(1 - cosθ)/2, cross-checked against the spectral route.
        let h0 = single_qubit_h0(1.0).unwrap();
        let mut rng = Rng::new(4);
        for _ in 0..30 {
            let theta = rng.next_f64() * PI;
            let phi = rng.next_f64() * 2.0 * PI;
            let eps = rng.next_f64();
            let rho = density_from_bloch(theta, phi, eps).unwrap();
            let closed = eps * (1.0 - theta.cos()) / 2.0;
            let spectral = exact_ergotropy(&rho, &h0).unwrap();
            assert!((closed - spectral).abs() < 1e-10);
        }
    }

    #[test]
    fn local_sum_examples() {
        let bell = DensityMatrix::bell_phi_plus();
        assert!(exact_local_ergotropy_sum(&bell, 1.0).unwrap().abs() < 1e-12);

        let both_excited = DensityMatrix::basis_state(2, 3);
        assert!((exact_local_ergotropy_sum(&both_excited, 1.0).unwrap() - 2.0).abs() < 1e-12);

        let half = DensityMatrix::basis_state(1, 1)
            .tensor(&DensityMatrix::maximally_mixed(1))
            .unwrap();
        assert!((exact_local_ergotropy_sum(&half, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn local_opt_product_state() {
        let h0 = two_qubit_h0(1.0, 0.01).unwrap();
        let rho = DensityMatrix::basis_state(2, 3);
        let result = exact_local_ergotropy_opt(&rho, &h0).unwrap();
        assert!(result.converged);
        assert!((result.ergotropy - 2.0).abs() < 1e-6, "got {}", result.ergotropy);
    }

    #[test]
    fn local_opt_bell_reaches_coupling_floor() {
        // Local unitaries cannot change the maximally mixed marginals, but
        // they can reorient the σ_z⊗σ_z correlation: σ_x⊗I maps Φ⁺ to Ψ⁺,
        // whose energy is ω₀ - J, so the local-opt ergotropy of Φ⁺ is 2J.
        let h0 = two_qubit_h0(1.0, 0.01).unwrap();
        let bell = DensityMatrix::bell_phi_plus();
        let result = exact_local_ergotropy_opt(&bell, &h0).unwrap();
        assert!((result.ergotropy - 0.02).abs() < 1e-6, "got {}", result.ergotropy);
    }

    #[test]
    fn local_opt_equals_sum_without_coupling() {
        let h0 = two_qubit_h0(1.0, 0.0).unwrap();
        for seed in 0..5 {
            let rho = random_density(2, seed, 3).unwrap();
            let sum = exact_local_ergotropy_sum(&rho, 1.0).unwrap();
            let opt = exact_local_ergotropy_opt(&rho, &h0).unwrap();
            assert!(
                (sum - opt.ergotropy).abs() < 1e-6,
                "seed {seed}: sum {sum} vs opt {}",
                opt.ergotropy
            );
        }
    }

    #[test]
    fn gap_examples() {
        let bell = DensityMatrix::bell_phi_plus();
        assert!((exact_ergotropy_gap(&bell, 1.0, 0.01).unwrap() - 1.0).abs() < 1e-12);

        let product = random_pure(1, 3)
            .unwrap()
            .tensor(&random_pure(1, 4).unwrap())
            .unwrap();
        assert!(exact_ergotropy_gap(&product, 1.0, 0.0).unwrap().abs() < 1e-10);

        let both_excited = DensityMatrix::basis_state(2, 3);
        assert!(exact_ergotropy_gap(&both_excited, 1.0, 0.01).unwrap().abs() < 1e-12);
    }

    #[test]
    fn gap_anomaly_flag() {
        assert!(!gap_is_anomalous(-0.01, 0.01));
        assert!(gap_is_anomalous(-0.03, 0.01));
        assert!(!gap_is_anomalous(0.5, 0.01));
    }

    #[test]
    fn minimality_certificate_small() {
        // Reduced version of the acceptance certificate: no Haar conjugation
        // beats the sorted-spectrum construction.
        let mut rng = Rng::new(2024);
        for n in 1..=2usize {
            let h0 = if n == 1 {
                single_qubit_h0(1.0).unwrap()
            } else {
                two_qubit_h0(1.0, 0.01).unwrap()
            };
            for seed in 0..5 {
                let rho = random_density(n, seed, 1 << n).unwrap();
                let (passive, _) = passive_state(&rho, &h0).unwrap();
                let floor = energy(&passive, &h0).unwrap();
                for _ in 0..200 {
                    let v = haar_unitary(1 << n, &mut rng);
                    let e = energy(&rho.evolved(&v).unwrap(), &h0).unwrap();
                    assert!(floor <= e + 1e-9, "n={n} seed={seed}: {floor} > {e}");
                }
            }
        }
    }

    #[test]
    fn passive_preserves_spectrum_and_is_idempotent() {
        let h0 = two_qubit_h0(1.0, 0.01).unwrap();
        for seed in 0..10 {
            let rho = random_density(2, seed, 4).unwrap();
            let (passive, _) = passive_state(&rho, &h0).unwrap();
            let s_in = hermitian_eig(rho.matrix()).unwrap().values;
            let s_out = hermitian_eig(passive.matrix()).unwrap().values;
            for (a, b) in s_in.iter().zip(&s_out) {
                assert!((a - b).abs() < 1e-9);
            }
            assert!(exact_ergotropy(&passive, &h0).unwrap().abs() < 1e-9);
            assert!(exact_ergotropy(&rho, &h0).unwrap() > -1e-9);
        }
    }

    #[test]
    fn ergotropy_hierarchy() {
        let j = 0.01;
        let h0 = two_qubit_h0(1.0, j).unwrap();
        for seed in 0..8 {
            let rho = random_density(2, seed, 2).unwrap();
            let sum = exact_local_ergotropy_sum(&rho, 1.0).unwrap();
            let opt = exact_local_ergotropy_opt(&rho, &h0).unwrap().ergotropy;
            let global = exact_ergotropy(&rho, &h0).unwrap();
            assert!(sum >= -1e-9);
            assert!(opt >= sum - 2.0 * j - 1e-6, "seed {seed}: opt {opt} < sum {sum} - 2J");
            assert!(opt <= global + 1e-9, "seed {seed}: opt {opt} > global {global}");
        }
    }

    #[test]
    fn two_qubit_report_is_complete() {
        let bell = DensityMatrix::bell_phi_plus();
        let report = oracle_report_two_qubit(&bell, 1.0, 0.01).unwrap();
        assert!((report.ergotropy - 1.0).abs() < 1e-12);
        assert!((report.passive_energy - 0.01).abs() < 1e-12);
        assert_eq!(
            report.gap,
            Some(report.ergotropy - report.local_sum_ergotropy.unwrap())
        );
        assert!(report.local_opt_ergotropy.is_some());

        let single = oracle_report(
            &DensityMatrix::basis_state(1, 0),
            &single_qubit_h0(1.0).unwrap(),
        )
        .unwrap();
        assert!(single.ergotropy.abs() < 1e-12);
        assert!(single.gap.is_none());
    }
}
