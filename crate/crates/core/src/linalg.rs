//! Dense complex matrix kernel.
//!
//! Everything in this crate is a small (dimension ≤ 32) dense matrix:
//! states, Hamiltonians, drive generators, unitaries. Storage is row-major
//! `Vec<Complex64>` with no sparsity. The Hermitian eigensolver is a cyclic
//! complex Jacobi iteration, which at these sizes reaches ~1e-14 residuals
//! in a handful of sweeps and is fully deterministic.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest matrix dimension the artifact supports (five qubits, which covers
/// a probe qubit on top of a four-qubit register).
pub const MAX_DIM: usize = 32;

pub type C64 = Complex64;

/// Shorthand constructor for a complex scalar.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("dimension {dim} exceeds the supported limit of {MAX_DIM}")]
    DimensionLimit { dim: usize },
    #[error("matrix is not Hermitian: max |A - A†| entry is {asymmetry:.3e}")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is not unitary: max |U†U - I| entry is {deviation:.3e}")]
    NotUnitary { deviation: f64 },
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    EigNotConverged { sweeps: usize, off: f64 },
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c(1.0, 0.0));
        }
        m
    }

    /// Build from nested rows; panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        ComplexMatrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Rank-1 projector |v⟩⟨v| from a (not necessarily normalized) vector.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, factor: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul dims {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Largest entrywise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max |A - A†| over entries; 0 for exactly Hermitian input.
    pub fn hermiticity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Max |U†U - I| over entries.
    pub fn unitarity_error(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let p = self.adjoint().matmul(self);
        p.max_abs_diff(&Self::identity(self.rows))
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let asymmetry = self.hermiticity_error();
        if asymmetry > tol {
            return Err(LinalgError::NotHermitian { asymmetry });
        }
        Ok(())
    }

    pub fn check_unitary(&self, tol: f64) -> Result<(), LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let deviation = self.unitarity_error();
        if deviation > tol {
            return Err(LinalgError::NotUnitary { deviation });
        }
        Ok(())
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs)
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs)
    }
}

/// Kronecker product. The result dimension is capped at [`MAX_DIM`].
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    if rows > MAX_DIM || cols > MAX_DIM {
        return Err(LinalgError::DimensionLimit { dim: rows.max(cols) });
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of several factors, left to right.
pub fn kron_all(factors: &[&ComplexMatrix]) -> Result<ComplexMatrix, LinalgError> {
    assert!(!factors.is_empty());
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = kron(&acc, f)?;
    }
    Ok(acc)
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// a unitary whose columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    /// Reconstruct V·diag(values)·V†.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lam = ComplexMatrix::diagonal(&self.values.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>());
        let vl = self.vectors.matmul(&lam);
        vl.matmul(&self.vectors.adjoint())
    }

    /// Unitary e^{-i·s·H} for the decomposed generator H.
    pub fn exp_unitary(&self, s: f64) -> ComplexMatrix {
        let d = self.values.len();
        let mut out = ComplexMatrix::zeros(d, d);
        // V · diag(e^{-i s λ}) · V† without forming the diagonal matrix.
        for i in 0..d {
            for j in 0..d {
                let mut acc = c(0.0, 0.0);
                for k in 0..d {
                    let phase = C64::from_polar(1.0, -s * self.values[k]);
                    acc += self.vectors.get(i, k) * phase * self.vectors.get(j, k).conj();
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

const HERMITIAN_TOL: f64 = 1e-10;
const JACOBI_MAX_SWEEPS: usize = 60;

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Rejects non-Hermitian input (tolerance 1e-10 on max |A - A†|).
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEig, LinalgError> {
    h.check_hermitian(HERMITIAN_TOL)?;
    let d = h.rows();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(d);

    let scale = a.max_abs().max(1e-300);
    let target = (scale * 1e-15).max(1e-300);

    let mut converged = false;
    let mut last_off = 0.0;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..d {
            for q in (p + 1)..d {
                off = off.max(a.get(p, q).norm());
            }
        }
        last_off = off;
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                let b = apq.norm();
                if b <= target * 1e-2 {
                    continue;
                }
                let alpha = a.get(p, p).re;
                let gamma = a.get(q, q).re;
                let phi = apq.arg();
                // Zero the (p,q) entry of the phase-reduced real 2x2 block.
                let theta = 0.5 * (2.0 * b).atan2(alpha - gamma);
                let (s, cth) = theta.sin_cos();
                // Plane rotation R: R[p][p]=c, R[p][q]=-s, R[q][p]=e^{-iφ}s,
                // R[q][q]=e^{-iφ}c; apply A ← R†AR, V ← VR.
                let eip = C64::from_polar(1.0, phi);
                let eim = eip.conj();
                for i in 0..d {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * cth + aiq * (eim * s));
                    a.set(i, q, aip * (-s) + aiq * (eim * cth));
                }
                for j in 0..d {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * cth + aqj * (eip * s));
                    a.set(q, j, apj * (-s) + aqj * (eip * cth));
                }
                for i in 0..d {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * cth + viq * (eim * s));
                    v.set(i, q, vip * (-s) + viq * (eim * cth));
                }
            }
        }
    }
    if !converged {
        return Err(LinalgError::EigNotConverged {
            sweeps: JACOBI_MAX_SWEEPS,
            off: last_off,
        });
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = ComplexMatrix::from_fn(d, d, |i, j| v.get(i, order[j]));
    Ok(HermitianEig { values, vectors })
}

/// Unitary e^{-i·s·h} of a Hermitian generator.
pub fn unitary_from_generator(h: &ComplexMatrix, s: f64) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eig(h)?;
    Ok(eig.exp_unitary(s))
}

/// Conjugation U·ρ·U†. Only dimension agreement is checked; the caller is
/// responsible for U being unitary.
pub fn adjoint_action(u: &ComplexMatrix, rho: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    if u.rows() != rho.rows() || u.cols() != rho.cols() || !u.is_square() {
        return Err(LinalgError::DimMismatch {
            left: u.rows(),
            right: rho.rows(),
        });
    }
    Ok(u.matmul(rho).matmul(&u.adjoint()))
}

/// Re Tr(A·B) without forming the product matrix.
pub fn trace_product_re(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    debug_assert_eq!(a.cols(), b.rows());
    debug_assert_eq!(a.rows(), b.cols());
    let mut acc = 0.0;
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let prod = a.get(i, k) * b.get(k, i);
            acc += prod.re;
        }
    }
    acc
}

/// Tr(A·B) as a complex number.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    debug_assert_eq!(a.cols(), b.rows());
    debug_assert_eq!(a.rows(), b.cols());
    let mut acc = c(0.0, 0.0);
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            acc += a.get(i, k) * b.get(k, i);
        }
    }
    acc
}

/// Commutator i[A, B]; Hermitian whenever A and B are.
pub fn commutator_i(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let ab = a.matmul(b);
    let ba = b.matmul(a);
    ab.sub(&ba).scale(c(0.0, 1.0))
}

/// Haar-random unitary: QR of a complex Ginibre matrix via modified
/// Gram-Schmidt. MGS leaves R with a real-positive diagonal, the unique
/// convention under which Q inherits the Haar distribution.
pub fn haar_unitary(dim: usize, rng: &mut crate::rng::Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = (0..dim)
        .map(|_| (0..dim).map(|_| c(rng.next_normal(), rng.next_normal())).collect())
        .collect();
    for j in 0..dim {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let current = &mut rest[0];
            let proj: C64 = done[k]
                .iter()
                .zip(current.iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            for (a, b) in done[k].iter().zip(current.iter_mut()) {
                *b -= proj * a;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}
