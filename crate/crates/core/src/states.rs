//! Density matrices: construction, validation, reduction, and comparison.
//!
//! Qubit ordering convention: qubit 0 is the leftmost tensor factor, i.e.
//! the most significant bit of a computational basis index. `|01⟩` is basis
//! index 1 with qubit 0 in `|0⟩` and qubit 1 in `|1⟩`.

use crate::linalg::{c, hermitian_eig, kron, ComplexMatrix, LinalgError, C64};
use crate::rng::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("matrix dimension {dim} is not a power-of-two in 2..=32")]
    BadDimension { dim: usize },
    #[error("not Hermitian: max |ρ - ρ†| entry is {asymmetry:.3e}")]
    NotHermitian { asymmetry: f64 },
    #[error("trace is {trace:.12} (must be 1 within {TRACE_TOL:.0e})")]
    TraceNotOne { trace: f64 },
    #[error("not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("purity parameter {epsilon} outside [0, 1]")]
    EpsilonOutOfRange { epsilon: f64 },
    #[error("qubit count {n_qubits} outside the supported range {min}..={max}")]
    QubitCountOutOfRange { n_qubits: usize, min: usize, max: usize },
    #[error("rank {rank} outside 1..={max}")]
    RankOutOfRange { rank: usize, max: usize },
    #[error("keep set must be a nonempty strict subset of 0..{n_qubits}, got {keep:?}")]
    BadKeepSet { keep: Vec<usize>, n_qubits: usize },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Hermitian, unit-trace, positive-semidefinite matrix on `n` qubits.
///
/// Constructors validate all three invariants (up to 1e-10 slack); unitary
/// evolution preserves them, so [`DensityMatrix::evolved`] skips the
/// re-check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

fn qubits_for_dim(dim: usize) -> Option<usize> {
    let mut n = 0;
    let mut d = 1;
    while d < dim {
        d *= 2;
        n += 1;
    }
    if d == dim && (1..=5).contains(&n) {
        Some(n)
    } else {
        None
    }
}

/// Validate a raw matrix as a density matrix, reporting which invariant
/// failed and by how much.
pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix, StateError> {
    let dim = m.rows();
    let n_qubits = match qubits_for_dim(dim) {
        Some(n) if m.is_square() => n,
        _ => return Err(StateError::BadDimension { dim }),
    };
    let asymmetry = m.hermiticity_error();
    if asymmetry > HERMITIAN_TOL {
        return Err(StateError::NotHermitian { asymmetry });
    }
    let trace = m.trace();
    if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
        return Err(StateError::TraceNotOne { trace: trace.re });
    }
    let eig = hermitian_eig(&m)?;
    let min_eigenvalue = eig.values[0];
    if min_eigenvalue < -PSD_TOL {
        return Err(StateError::NotPositive { min_eigenvalue });
    }
    Ok(DensityMatrix { n_qubits, matrix: m })
}

impl DensityMatrix {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Computational basis state |index⟩⟨index|.
    pub fn basis_state(n_qubits: usize, index: usize) -> Self {
        let dim = 1 << n_qubits;
        assert!(index < dim);
        let mut m = ComplexMatrix::zeros(dim, dim);
        m.set(index, index, c(1.0, 0.0));
        DensityMatrix { n_qubits, matrix: m }
    }

    /// Pure state from an amplitude vector (normalized internally).
    pub fn from_pure(amplitudes: &[C64]) -> Result<Self, StateError> {
        let dim = amplitudes.len();
        let n_qubits = qubits_for_dim(dim).ok_or(StateError::BadDimension { dim })?;
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(StateError::TraceNotOne { trace: 0.0 });
        }
        let v: Vec<C64> = amplitudes.iter().map(|z| z / norm).collect();
        Ok(DensityMatrix {
            n_qubits,
            matrix: ComplexMatrix::outer(&v),
        })
    }

    /// The Bell state Φ⁺ = (|00⟩ + |11⟩)/√2.
    pub fn bell_phi_plus() -> Self {
        let s = 0.5f64.sqrt();
        Self::from_pure(&[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap()
    }

    /// Maximally mixed state I/2ⁿ.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        DensityMatrix {
            n_qubits,
            matrix: ComplexMatrix::identity(dim).scale(c(1.0 / dim as f64, 0.0)),
        }
    }

    /// Tr(ρ²).
    pub fn purity(&self) -> f64 {
        crate::linalg::trace_product_re(&self.matrix, &self.matrix)
    }

    /// Unitary conjugation U·ρ·U†. The caller guarantees U is unitary, so
    /// the density-matrix invariants survive and are not re-checked.
    pub fn evolved(&self, u: &ComplexMatrix) -> Result<Self, StateError> {
        if u.rows() != self.dim() {
            return Err(StateError::DimMismatch {
                left: u.rows(),
                right: self.dim(),
            });
        }
        Ok(DensityMatrix {
            n_qubits: self.n_qubits,
            matrix: crate::linalg::adjoint_action(u, &self.matrix)?,
        })
    }

    /// Tensor product of two states.
    pub fn tensor(&self, other: &Self) -> Result<Self, StateError> {
        let m = kron(&self.matrix, &other.matrix)?;
        Ok(DensityMatrix {
            n_qubits: self.n_qubits + other.n_qubits,
            matrix: m,
        })
    }
}

/// Mixed single-qubit state (1-ε)·I/2 + ε·|ψ⟩⟨ψ| with
/// |ψ⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩. Eigenvalues are (1±ε)/2.
pub fn density_from_bloch(theta: f64, phi: f64, epsilon: f64) -> Result<DensityMatrix, StateError> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(StateError::EpsilonOutOfRange { epsilon });
    }
    let a = c((theta / 2.0).cos(), 0.0);
    let b = C64::from_polar((theta / 2.0).sin(), phi);
    let pure = ComplexMatrix::outer(&[a, b]);
    let mixed = ComplexMatrix::identity(2).scale(c((1.0 - epsilon) / 2.0, 0.0));
    let m = mixed.add(&pure.scale(c(epsilon, 0.0)));
    Ok(DensityMatrix { n_qubits: 1, matrix: m })
}

/// Haar-random pure state on 1..=3 qubits, deterministic in the seed.
///
/// A complex-Gaussian amplitude vector normalized to unit length is
/// Haar-distributed on the sphere.
pub fn random_pure(n_qubits: usize, seed: u64) -> Result<DensityMatrix, StateError> {
    if !(1..=3).contains(&n_qubits) {
        return Err(StateError::QubitCountOutOfRange {
            n_qubits,
            min: 1,
            max: 3,
        });
    }
    let dim = 1 << n_qubits;
    let mut rng = Rng::new(seed);
    let v: Vec<C64> = (0..dim)
        .map(|_| c(rng.next_normal(), rng.next_normal()))
        .collect();
    DensityMatrix::from_pure(&v)
}

/// Random mixed state of bounded rank: ρ = G·G†/Tr(G·G†) with G a
/// dim×rank complex Ginibre matrix. Deterministic in the seed.
pub fn random_density(n_qubits: usize, seed: u64, rank: usize) -> Result<DensityMatrix, StateError> {
    if !(1..=3).contains(&n_qubits) {
        return Err(StateError::QubitCountOutOfRange {
            n_qubits,
            min: 1,
            max: 3,
        });
    }
    let dim = 1 << n_qubits;
    if rank < 1 || rank > dim {
        return Err(StateError::RankOutOfRange { rank, max: dim });
    }
    let mut rng = Rng::new(seed);
    let g = ComplexMatrix::from_fn(dim, rank, |_, _| c(rng.next_normal(), rng.next_normal()));
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    Ok(DensityMatrix {
        n_qubits,
        matrix: gg.scale(c(1.0 / tr, 0.0)),
    })
}

/// Reduced state on the `keep` qubits (ascending indices), tracing out the
/// rest. `keep` must be a nonempty strict subset.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix, StateError> {
    let n = rho.n_qubits();
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.len() >= n || keep.iter().any(|&q| q >= n) {
        return Err(StateError::BadKeepSet { keep, n_qubits: n });
    }
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let dk = 1usize << keep.len();
    let dt = 1usize << traced.len();

    // Qubit q occupies bit (n-1-q) of a basis index (qubit 0 = MSB).
    let build_index = |kept_bits: usize, traced_bits: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            let bit = (kept_bits >> (keep.len() - 1 - pos)) & 1;
            idx |= bit << (n - 1 - q);
        }
        for (pos, &q) in traced.iter().enumerate() {
            let bit = (traced_bits >> (traced.len() - 1 - pos)) & 1;
            idx |= bit << (n - 1 - q);
        }
        idx
    };

    let mut out = ComplexMatrix::zeros(dk, dk);
    for a in 0..dk {
        for b in 0..dk {
            let mut acc = c(0.0, 0.0);
            for t in 0..dt {
                acc += rho.matrix.get(build_index(a, t), build_index(b, t));
            }
            out.set(a, b, acc);
        }
    }
    Ok(DensityMatrix {
        n_qubits: keep.len(),
        matrix: out,
    })
}

/// Overlap fidelity Tr(ρ_a·ρ_b) (not the Uhlmann fidelity).
pub fn overlap_fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64, StateError> {
    if a.dim() != b.dim() {
        return Err(StateError::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(crate::linalg::trace_product_re(&a.matrix, &b.matrix))
}

/// Von Neumann entropy in bits: -Σ λ log₂ λ over eigenvalues above 1e-12.
pub fn entanglement_entropy(rho: &DensityMatrix) -> f64 {
    let eig = hermitian_eig(&rho.matrix).expect("density matrix is Hermitian");
    let mut s = 0.0;
    for &lam in &eig.values {
        if lam > 1e-12 {
            s -= lam * lam.log2();
        }
    }
    s
}

// --- text serialization -----------------------------------------------------
//
// Format: a header line `dim <d>`, then d lines of d whitespace-separated
// `re,im` pairs. Lines starting with `#` and blank lines are ignored.

/// Render a density matrix in the shared text format.
pub fn to_text(rho: &DensityMatrix) -> String {
    let d = rho.dim();
    let mut out = String::new();
    out.push_str(&format!("dim {d}\n"));
    for i in 0..d {
        let row: Vec<String> = (0..d)
            .map(|j| {
                let z = rho.matrix().get(i, j);
                format!("{:.17e},{:.17e}", z.re, z.im)
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse the text format and validate the result as a density matrix.
pub fn from_text(text: &str) -> Result<DensityMatrix, StateError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (ln, header) = lines.next().ok_or(StateError::Parse {
        line: 0,
        message: "empty input".into(),
    })?;
    let dim: usize = header
        .trim()
        .strip_prefix("dim")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or(StateError::Parse {
            line: ln + 1,
            message: format!("expected `dim <d>` header, got `{}`", header.trim()),
        })?;
    if qubits_for_dim(dim).is_none() {
        return Err(StateError::BadDimension { dim });
    }
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let (ln, row) = lines.next().ok_or(StateError::Parse {
            line: 0,
            message: format!("expected {dim} rows, got {i}"),
        })?;
        let cells: Vec<&str> = row.split_whitespace().collect();
        if cells.len() != dim {
            return Err(StateError::Parse {
                line: ln + 1,
                message: format!("expected {dim} entries, got {}", cells.len()),
            });
        }
        for (j, cell) in cells.iter().enumerate() {
            let (re, im) = cell.split_once(',').ok_or(StateError::Parse {
                line: ln + 1,
                message: format!("entry `{cell}` is not `re,im`"),
            })?;
            let re: f64 = re.trim().parse().map_err(|_| StateError::Parse {
                line: ln + 1,
                message: format!("bad real part `{re}`"),
            })?;
            let im: f64 = im.trim().parse().map_err(|_| StateError::Parse {
                line: ln + 1,
                message: format!("bad imaginary part `{im}`"),
            })?;
            m.set(i, j, c(re, im));
        }
    }
    validate_density(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn bloch_pole_is_ground_state() {
        let rho = density_from_bloch(0.0, 0.0, 1.0).unwrap();
        assert!(rho.matrix().max_abs_diff(DensityMatrix::basis_state(1, 0).matrix()) < 1e-14);
    }

    #[test]
    fn bloch_zero_purity_is_maximally_mixed() {
        let rho = density_from_bloch(1.2, 2.3, 0.0).unwrap();
        assert!(rho.matrix().max_abs_diff(DensityMatrix::maximally_mixed(1).matrix()) < 1e-14);
    }

    #[test]
    fn bloch_equator_half_purity() {
        // (1-ε)I/2 + ε|+⟩⟨+| with ε = 1/2 has entries [[0.5, 0.25], [0.25, 0.5]].
        let rho = density_from_bloch(FRAC_PI_2, 0.0, 0.5).unwrap();
        let expect = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.25, 0.0)],
            vec![c(0.25, 0.0), c(0.5, 0.0)],
        ]);
        assert!(rho.matrix().max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn bloch_eigenvalues_random_params() {
        let mut rng = crate::rng::Rng::new(31);
        for _ in 0..50 {
            let theta = rng.next_f64() * PI;
            let phi = rng.next_f64() * 2.0 * PI;
            let eps = rng.next_f64();
            let rho = density_from_bloch(theta, phi, eps).unwrap();
            let eig = hermitian_eig(rho.matrix()).unwrap();
            assert!((eig.values[0] - (1.0 - eps) / 2.0).abs() < 1e-10);
            assert!((eig.values[1] - (1.0 + eps) / 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn bloch_rejects_bad_epsilon() {
        assert!(density_from_bloch(0.0, 0.0, 1.5).is_err());
        assert!(density_from_bloch(0.0, 0.0, -0.1).is_err());
    }

    #[test]
    fn random_pure_is_rank_one_and_deterministic() {
        for n in 1..=3 {
            let rho = random_pure(n, 99).unwrap();
            assert!((rho.purity() - 1.0).abs() < 1e-10);
            let again = random_pure(n, 99).unwrap();
            assert_eq!(rho.matrix(), again.matrix());
        }
        assert!(random_pure(4, 0).is_err());
    }

    #[test]
    fn random_pure_haar_mean_sz() {
        // ⟨σ_z⟩ averaged over Haar states vanishes by symmetry.
        let mut sum = 0.0;
        let n = 10_000;
        for seed in 0..n {
            let rho = random_pure(1, seed).unwrap();
            sum += rho.matrix().get(0, 0).re - rho.matrix().get(1, 1).re;
        }
        let mean = sum / n as f64;
        assert!(mean.abs() < 0.03, "mean ⟨σ_z⟩ = {mean}");
    }

    #[test]
    fn random_density_contracts() {
        let full = random_density(2, 7, 4).unwrap();
        assert!(validate_density(full.matrix().clone()).is_ok());
        let pure = random_density(2, 7, 1).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-10);
        for seed in 0..100 {
            let rho = random_density(2, seed, 3).unwrap();
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        }
        assert!(random_density(2, 0, 0).is_err());
        assert!(random_density(2, 0, 5).is_err());
    }

    #[test]
    fn partial_trace_product_state() {
        let zero = DensityMatrix::basis_state(1, 0);
        let one = DensityMatrix::basis_state(1, 1);
        let prod = zero.tensor(&one).unwrap();
        let red0 = partial_trace(&prod, &[0]).unwrap();
        assert!(red0.matrix().max_abs_diff(zero.matrix()) < 1e-14);
        let red1 = partial_trace(&prod, &[1]).unwrap();
        assert!(red1.matrix().max_abs_diff(one.matrix()) < 1e-14);
    }

    #[test]
    fn partial_trace_bell_is_maximally_mixed() {
        let bell = DensityMatrix::bell_phi_plus();
        for q in [0usize, 1] {
            let red = partial_trace(&bell, &[q]).unwrap();
            assert!(red.matrix().max_abs_diff(DensityMatrix::maximally_mixed(1).matrix()) < 1e-12);
        }
    }

    #[test]
    fn partial_trace_preserves_validity() {
        for seed in 0..20 {
            let rho = random_density(3, seed, 5).unwrap();
            for keep in [vec![0usize], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]] {
                let red = partial_trace(&rho, &keep).unwrap();
                assert!((red.matrix().trace().re - 1.0).abs() < 1e-9);
                assert!(red.matrix().hermiticity_error() < 1e-9);
                let min = hermitian_eig(red.matrix()).unwrap().values[0];
                assert!(min > -1e-9);
            }
        }
    }

    #[test]
    fn partial_trace_rejects_bad_keep() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[0, 1]).is_err());
        assert!(partial_trace(&rho, &[3]).is_err());
    }

    #[test]
    fn fidelity_cases() {
        let plus = density_from_bloch(FRAC_PI_2, 0.0, 1.0).unwrap();
        assert!((overlap_fidelity(&plus, &plus).unwrap() - 1.0).abs() < 1e-12);
        let zero = DensityMatrix::basis_state(1, 0);
        let one = DensityMatrix::basis_state(1, 1);
        assert!(overlap_fidelity(&zero, &one).unwrap().abs() < 1e-14);
        let mixed = DensityMatrix::maximally_mixed(1);
        assert!((overlap_fidelity(&mixed, &mixed).unwrap() - 0.5).abs() < 1e-14);
        assert!(overlap_fidelity(&zero, &DensityMatrix::maximally_mixed(2)).is_err());
    }

    #[test]
    fn fidelity_symmetry() {
        for seed in 0..20 {
            let a = random_density(2, seed, 2).unwrap();
            let b = random_density(2, seed + 1000, 4).unwrap();
            let f_ab = overlap_fidelity(&a, &b).unwrap();
            let f_ba = overlap_fidelity(&b, &a).unwrap();
            assert!((f_ab - f_ba).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_cases() {
        let pure = random_pure(1, 4).unwrap();
        assert!(entanglement_entropy(&pure).abs() < 1e-9);
        let mixed = DensityMatrix::maximally_mixed(1);
        assert!((entanglement_entropy(&mixed) - 1.0).abs() < 1e-12);
        // Spectrum (3/4, 1/4): -Σ λ log₂ λ = 2 - (3/4)·log₂3 ≈ 0.8112781245.
        let rho = validate_density(ComplexMatrix::diagonal(&[c(0.75, 0.0), c(0.25, 0.0)])).unwrap();
        assert!((entanglement_entropy(&rho) - 0.811278124459133).abs() < 1e-12);
    }

    #[test]
    fn schmidt_symmetry() {
        for seed in 0..10 {
            let rho = random_pure(2, seed).unwrap();
            let s0 = entanglement_entropy(&partial_trace(&rho, &[0]).unwrap());
            let s1 = entanglement_entropy(&partial_trace(&rho, &[1]).unwrap());
            assert!((s0 - s1).abs() < 1e-9, "seed {seed}: {s0} vs {s1}");
        }
    }

    #[test]
    fn validate_density_diagnostics() {
        assert!(validate_density(ComplexMatrix::identity(2).scale(c(0.5, 0.0))).is_ok());

        let neg = ComplexMatrix::diagonal(&[c(1.5, 0.0), c(-0.5, 0.0)]);
        match validate_density(neg) {
            Err(StateError::NotPositive { min_eigenvalue }) => {
                assert!((min_eigenvalue + 0.5).abs() < 1e-12)
            }
            other => panic!("expected PSD violation, got {other:?}"),
        }

        // [[0.5, 0.6], [0.6, 0.5]] has eigenvalues 1.1 and -0.1.
        let off = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.6, 0.0)],
            vec![c(0.6, 0.0), c(0.5, 0.0)],
        ]);
        match validate_density(off) {
            Err(StateError::NotPositive { min_eigenvalue }) => {
                assert!((min_eigenvalue + 0.1).abs() < 1e-12)
            }
            other => panic!("expected PSD violation, got {other:?}"),
        }

        let mut skew = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        skew.set(0, 1, c(0.0, 0.3));
        skew.set(1, 0, c(0.0, 0.3));
        assert!(matches!(
            validate_density(skew),
            Err(StateError::NotHermitian { .. })
        ));

        let bad_trace = ComplexMatrix::identity(2);
        assert!(matches!(
            validate_density(bad_trace),
            Err(StateError::TraceNotOne { .. })
        ));

        assert!(matches!(
            validate_density(ComplexMatrix::identity(3).scale(c(1.0 / 3.0, 0.0))),
            Err(StateError::BadDimension { dim: 3 })
        ));
    }

    #[test]
    fn text_round_trip() {
        for seed in [0u64, 1, 2] {
            let rho = random_density(2, seed, 3).unwrap();
            let text = to_text(&rho);
            let back = from_text(&text).unwrap();
            assert!(rho.matrix().max_abs_diff(back.matrix()) < 1e-15);
        }
    }

    #[test]
    fn text_parse_errors_name_the_line() {
        let err = from_text("dim 2\n1.0,0.0 0.0,0.0\n0.0,0.0 oops\n").unwrap_err();
        match err {
            StateError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(from_text("").is_err());
        assert!(from_text("dim x\n").is_err());
    }

    #[test]
    fn text_accepts_comments() {
        let text = "# a comment\ndim 2\n0.5,0.0 0.0,0.0\n0.0,0.0 0.5,0.0\n";
        let rho = from_text(text).unwrap();
        assert!((rho.purity() - 0.5).abs() < 1e-12);
    }
}
