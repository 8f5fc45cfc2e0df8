//! Dense complex matrices.
//!
//! Row-major storage, `Complex64` entries. Sizes in this crate stay small
//! (a few dozen rows at most), so everything is straightforward O(n³) code.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance used by [`HermitianMatrix::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius threshold for the Jacobi eigensolver.
pub const EIG_TOL: f64 = 1e-12;
/// Jacobi sweep cap.
pub const EIG_MAX_SWEEPS: usize = 100;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            data.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    /// `|ψ⟩⟨ψ|` for the (not necessarily normalized) vector `psi`.
    pub fn outer(psi: &[Complex64]) -> Self {
        Self::from_fn(psi.len(), psi.len(), |i, j| psi[i] * psi[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `tr(A·B)` without forming the product.
    pub fn trace_of_product(&self, rhs: &Self) -> Result<Complex64> {
        if self.cols != rhs.rows || self.rows != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "trace of {}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self[(i, k)] * rhs[(k, i)];
            }
        }
        Ok(acc)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Kronecker product `A ⊗ B`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (br, bc) = (rhs.rows, rhs.cols);
        Self::from_fn(self.rows * br, self.cols * bc, |i, j| {
            self[(i / br, j / bc)] * rhs[(i % br, j % bc)]
        })
    }

    /// `max |M − M†|` entrywise.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Partial trace of a matrix on `ℂ^{dA} ⊗ ℂ^{dB}`.
    pub fn partial_trace(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        let (da, db) = dims;
        if !self.is_square() || self.rows != da * db {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not on a {da}x{db} bipartite space",
                self.rows, self.cols
            )));
        }
        let out = match keep {
            Subsystem::A => Self::from_fn(da, da, |i, j| {
                (0..db).map(|k| self[(i * db + k, j * db + k)]).sum()
            }),
            Subsystem::B => Self::from_fn(db, db, |i, j| {
                (0..da).map(|k| self[(k * db + i, k * db + j)]).sum()
            }),
        };
        Ok(out)
    }
}

/// Tensor factor of a bipartite space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Operator sugar for same-shape arithmetic; shape errors panic here, use the
// checked_* methods where shapes are not known to agree.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_add(rhs).expect("matrix shapes differ")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_sub(rhs).expect("matrix shapes differ")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.mat_mul(rhs).expect("matrix shapes differ")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

/// A square matrix equal to its adjoint within [`HERMITIAN_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

/// Eigenvalues in descending order and the matching eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, HERMITIAN_TOL)
    }

    pub fn with_tolerance(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                m.rows, m.cols
            )));
        }
        let dev = m.hermitian_deviation();
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self(m))
    }

    /// `(M + M†)/2`, exactly Hermitian.
    pub fn hermitian_part(m: &ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                m.rows, m.cols
            )));
        }
        Ok(Self(ComplexMatrix::from_fn(m.rows, m.cols, |i, j| {
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        })))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n, n))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self(ComplexMatrix::diagonal(values))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        Self(self.0.kron(&rhs.0))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self(self.0.checked_add(&rhs.0)?))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self(self.0.checked_sub(&rhs.0)?))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0.scale_real(k))
    }

    /// Real trace.
    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn eig(&self) -> Result<Eigen> {
        hermitian_eig(self, EIG_TOL)
    }

    /// Spectral norm `max |λ|`.
    pub fn operator_norm(&self) -> Result<f64> {
        let e = self.eig()?;
        Ok(e.values.iter().fold(0.0f64, |m, v| m.max(v.abs())))
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(self.eig()?.values[0])
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(*self.eig()?.values.last().expect("non-empty spectrum"))
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Sweeps over all `(p, q)` pairs, annihilating `M[p][q]` with a unitary
/// plane rotation, until the off-diagonal Frobenius norm drops to
/// `tol · max(1, ‖M‖_F)` or [`EIG_MAX_SWEEPS`] sweeps have run.
pub fn hermitian_eig(m: &HermitianMatrix, tol: f64) -> Result<Eigen> {
    let n = m.dim();
    let mut a = m.0.clone();
    // Force an exactly Hermitian working copy.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol * a.frobenius_norm().max(1.0);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > threshold {
        if sweeps == EIG_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigen { values, vectors })
}

/// One Jacobi step on the `(p, q)` plane: `A ← J†AJ`, `V ← VJ`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < f64::MIN_POSITIVE {
        return;
    }
    // Phase e^{-iφ} makes the (p, q) entry real, then a real rotation zeroes it.
    let phase = (apq / r).conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = phase * (-s);
    let j_qq = phase * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * j_pp + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * j_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
        a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

/// `Σ sign(λᵢ)|vᵢ⟩⟨vᵢ|` with `sign(0) = +1`; an involution of norm one.
pub fn spectral_sign(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    let e = m.eig()?;
    let signs: Vec<f64> = e
        .values
        .iter()
        .map(|&l| if l >= 0.0 { 1.0 } else { -1.0 })
        .collect();
    HermitianMatrix::hermitian_part(&reassemble(&e.vectors, &signs))
}

/// `V·diag(values)·V†`.
pub fn reassemble(vectors: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let n = vectors.rows();
    ComplexMatrix::from_fn(n, n, |i, j| {
        values
            .iter()
            .enumerate()
            .map(|(k, &l)| vectors[(i, k)] * vectors[(j, k)].conj() * l)
            .sum()
    })
}

/// Pauli matrices and friends used throughout tests and demos.
pub mod pauli {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub fn x() -> HermitianMatrix {
        HermitianMatrix(ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap())
    }

    pub fn y() -> HermitianMatrix {
        HermitianMatrix(
            ComplexMatrix::from_vec(
                2,
                2,
                vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
            )
            .unwrap(),
        )
    }

    pub fn z() -> HermitianMatrix {
        HermitianMatrix::diagonal(&[1.0, -1.0])
    }
}
