//! Events, states and conditional probabilities on a matrix algebra.
//!
//! Events are orthogonal projections, `0` is the zero matrix and `𝕀` the
//! identity. The partial sum `e + f` exists only for orthogonal events and
//! `𝕀 − e` is the orthocomplement. States are density matrices and the
//! conditional probability of `f` given `e` is the Lüders update
//! `tr(eρe·f) / tr(ρe)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};

/// Tolerance for idempotence, orthogonality and commutation checks.
pub const EVENT_TOL: f64 = 1e-10;
/// Tolerance for positivity and normalization of states.
pub const STATE_TOL: f64 = 1e-10;
/// Smallest conditioning probability accepted by [`conditional_probability`].
pub const CONDITION_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Event(HermitianMatrix);

impl Event {
    pub fn new(projection: HermitianMatrix) -> Result<Self> {
        let p = projection.matrix();
        let dev = (&(p * p) - p).max_abs();
        if dev > EVENT_TOL {
            return Err(Error::NotProjection(format!("‖P² − P‖ = {dev:e}")));
        }
        Ok(Self(projection))
    }

    pub fn zero(n: usize) -> Self {
        Self(HermitianMatrix::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        Self(HermitianMatrix::identity(n))
    }

    /// Projection onto the line spanned by `psi` (normalized internally).
    pub fn from_vector(psi: &[Complex64]) -> Result<Self> {
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::NotProjection("zero vector".into()));
        }
        let p = ComplexMatrix::outer(psi).scale_real(1.0 / norm_sqr);
        Self::new(HermitianMatrix::hermitian_part(&p)?)
    }

    /// `|i⟩⟨i|` in dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[i] = Complex64::new(1.0, 0.0);
        Self::from_vector(&v).expect("basis vector is nonzero")
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn rank(&self) -> usize {
        self.0.trace().round() as usize
    }

    pub fn projection(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    pub fn is_orthogonal(&self, other: &Event) -> Result<bool> {
        orthogonal(self, other)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct State(HermitianMatrix);

impl State {
    pub fn new(rho: HermitianMatrix) -> Result<Self> {
        let tr = rho.trace();
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::NotState(format!("trace {tr}")));
        }
        let min = rho.min_eigenvalue()?;
        if min < -STATE_TOL {
            return Err(Error::NotState(format!("eigenvalue {min:e}")));
        }
        Ok(Self(rho))
    }

    /// `|ψ⟩⟨ψ|/⟨ψ|ψ⟩`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let e = Event::from_vector(psi).map_err(|_| Error::NotState("zero vector".into()))?;
        Ok(Self(e.0))
    }

    /// `𝕀/n`.
    pub fn maximally_mixed(n: usize) -> Self {
        Self(HermitianMatrix::identity(n).scale(1.0 / n as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn rho(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!("dimension {a} vs {b}")));
    }
    Ok(())
}

/// `e ⊥ f` iff `‖e·f‖_max ≤ 1e-10`.
pub fn orthogonal(e: &Event, f: &Event) -> Result<bool> {
    same_dim(e.dim(), f.dim())?;
    Ok(e.matrix().mat_mul(f.matrix())?.max_abs() <= EVENT_TOL)
}

/// Partial sum, defined only for orthogonal events.
pub fn event_sum(e: &Event, f: &Event) -> Result<Event> {
    if !orthogonal(e, f)? {
        return Err(Error::NotOrthogonal);
    }
    Event::new(e.0.add(&f.0)?)
}

/// Sum of pairwise orthogonal events; `0` for an empty list.
pub fn event_sum_all(events: &[&Event], dim: usize) -> Result<Event> {
    events
        .iter()
        .try_fold(Event::zero(dim), |acc, e| event_sum(&acc, e))
}

/// Orthocomplement `𝕀 − e`.
pub fn complement(e: &Event) -> Event {
    Event(
        HermitianMatrix::identity(e.dim())
            .sub(&e.0)
            .expect("same dimension"),
    )
}

/// `μ(e) = tr(ρe)`.
pub fn probability(mu: &State, e: &Event) -> Result<f64> {
    same_dim(mu.dim(), e.dim())?;
    let p = mu.matrix().trace_of_product(e.matrix())?.re;
    Ok(p.clamp(0.0, 1.0))
}

/// `tr(eρe·f)`, the joint weight `μ(f | e)·μ(e)`, well defined even when `μ(e) = 0`.
pub fn sequential_weight(mu: &State, e: &Event, f: &Event) -> Result<f64> {
    same_dim(mu.dim(), e.dim())?;
    same_dim(e.dim(), f.dim())?;
    let ere = &(e.matrix() * mu.matrix()) * e.matrix();
    Ok(ere.trace_of_product(f.matrix())?.re)
}

/// Lüders conditional probability `μ(f | e) = tr(eρe·f) / tr(ρe)`.
pub fn conditional_probability(mu: &State, f: &Event, e: &Event) -> Result<f64> {
    let pe = probability(mu, e)?;
    if pe <= CONDITION_EPS {
        return Err(Error::NullCondition(pe));
    }
    Ok((sequential_weight(mu, e, f)? / pe).clamp(0.0, 1.0))
}

/// `Σ αᵢ eᵢ` for pairwise orthogonal events.
pub fn observable_from_spectrum(coeffs: &[f64], events: &[Event]) -> Result<HermitianMatrix> {
    if coeffs.len() != events.len() {
        return Err(Error::InvalidArgument(format!(
            "{} coefficients for {} events",
            coeffs.len(),
            events.len()
        )));
    }
    let Some(first) = events.first() else {
        return Err(Error::InvalidArgument("no events".into()));
    };
    let n = first.dim();
    for (i, e) in events.iter().enumerate() {
        for f in &events[i + 1..] {
            if !orthogonal(e, f)? {
                return Err(Error::NotOrthogonal);
            }
        }
    }
    let mut acc = HermitianMatrix::zeros(n);
    for (&a, e) in coeffs.iter().zip(events) {
        acc = acc.add(&e.0.scale(a))?;
    }
    Ok(acc)
}

/// Compatibility in the matrix model: `‖ab − ba‖_max ≤ 1e-10`.
pub fn compatible(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<bool> {
    same_dim(a.dim(), b.dim())?;
    let ab = a.matrix().mat_mul(b.matrix())?;
    let ba = b.matrix().mat_mul(a.matrix())?;
    Ok((&ab - &ba).max_abs() <= EVENT_TOL)
}
