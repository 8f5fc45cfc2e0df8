//! Sorkin's interference hierarchy.
//!
//! For slits `e₁ … eₙ` (pairwise orthogonal events), a detector event `f`
//! and a state `μ`, the joint term of a slit subset `S` is
//! `μ(f | e_S)·μ(e_S)` with `e_S = Σ_{i∈S} eᵢ`, and
//!
//! ```text
//! Iₙ = Σ_{∅≠S⊆{1..n}} (−1)^{n−|S|} · μ(f | e_S)·μ(e_S)
//! ```
//!
//! `I₂` is ordinary two-path interference. With Lüders conditioning every
//! `Iₙ` with `n ≥ 3` vanishes identically.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::logic::{event_sum_all, orthogonal, sequential_weight, Event, State};

/// Default number of grid points for phase sweeps over `[0, 2π]`.
pub const PHASE_GRID_POINTS: usize = 181;

#[derive(Clone, Debug)]
pub struct SlitConfiguration {
    slits: Vec<Event>,
    detector: Event,
    state: State,
}

impl SlitConfiguration {
    pub fn new(slits: Vec<Event>, detector: Event, state: State) -> Result<Self> {
        let n = state.dim();
        if detector.dim() != n || slits.iter().any(|e| e.dim() != n) {
            return Err(Error::DimensionMismatch(
                "slits, detector and state must share one dimension".into(),
            ));
        }
        for (i, e) in slits.iter().enumerate() {
            for (j, f) in slits.iter().enumerate().skip(i + 1) {
                if !orthogonal(e, f)? {
                    return Err(Error::InvalidConfiguration(format!(
                        "slits {i} and {j} are not orthogonal"
                    )));
                }
            }
        }
        Ok(Self {
            slits,
            detector,
            state,
        })
    }

    pub fn slits(&self) -> &[Event] {
        &self.slits
    }

    pub fn detector(&self) -> &Event {
        &self.detector
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    /// Same configuration with the slits reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.slits.len()];
        if perm.len() != self.slits.len()
            || perm
                .iter()
                .any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::InvalidArgument(
                "not a permutation of the slits".into(),
            ));
        }
        Ok(Self {
            slits: perm.iter().map(|&i| self.slits[i].clone()).collect(),
            detector: self.detector.clone(),
            state: self.state.clone(),
        })
    }
}

/// `μ(f | e_S)·μ(e_S) = tr(e_S ρ e_S f)` for the slit index set `subset`.
///
/// The product form is used directly, so a subset of probability zero
/// contributes `0` instead of an undefined quotient.
pub fn joint_term(cfg: &SlitConfiguration, subset: &[usize]) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::InvalidArgument("empty slit subset".into()));
    }
    if let Some(&i) = subset.iter().find(|&&i| i >= cfg.slits.len()) {
        return Err(Error::InvalidArgument(format!(
            "slit index {i} out of range for {} slits",
            cfg.slits.len()
        )));
    }
    let mut chosen: Vec<&Event> = Vec::with_capacity(subset.len());
    for &i in subset {
        if chosen.iter().any(|e| std::ptr::eq(*e, &cfg.slits[i])) {
            return Err(Error::InvalidArgument(format!("slit index {i} repeated")));
        }
        chosen.push(&cfg.slits[i]);
    }
    let open = event_sum_all(&chosen, cfg.dim())?;
    sequential_weight(&cfg.state, &open, &cfg.detector)
}

/// `Iₙ` for a configuration with exactly `order` slits.
pub fn sorkin_term(cfg: &SlitConfiguration, order: usize) -> Result<f64> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!("order {order} < 2")));
    }
    if cfg.slits.len() != order {
        return Err(Error::InvalidConfiguration(format!(
            "I{order} needs {order} slits, configuration has {}",
            cfg.slits.len()
        )));
    }
    let mut total = 0.0;
    for mask in 1u32..(1 << order) {
        let subset: Vec<usize> = (0..order).filter(|i| mask & (1 << i) != 0).collect();
        let sign = if (order - subset.len()).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        total += sign * joint_term(cfg, &subset)?;
    }
    Ok(total)
}

/// Evaluate `I_order` of `family(t)` at every grid point, in grid order.
pub fn interference_sweep<F>(family: F, grid: &[f64], order: usize) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<SlitConfiguration>,
{
    grid.iter()
        .map(|&t| Ok((t, sorkin_term(&family(t)?, order)?)))
        .collect()
}

/// `points` equally spaced values covering `[0, 2π]` inclusive.
pub fn phase_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| 2.0 * PI * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Phase-scan family in dimension `dim ≥ order`.
///
/// The slits are the basis projectors on the last `order` basis vectors
/// `|s₀⟩ … |s_{n−1}⟩`, the state is their equal superposition and the
/// detector is `|ψ_φ⟩⟨ψ_φ|` with `ψ_φ = Σ_j e^{ijφ}|s_j⟩/√n`. For
/// `order = 2` this gives `I₂(φ) = cos(φ)/2`.
pub fn phase_family(dim: usize, order: usize) -> Result<impl Fn(f64) -> Result<SlitConfiguration>> {
    if order < 2 || dim < order {
        return Err(Error::InvalidArgument(format!(
            "cannot fit {order} orthogonal slits in dimension {dim}"
        )));
    }
    let offset = dim - order;
    Ok(move |phi: f64| {
        let slits = (0..order).map(|j| Event::basis(dim, offset + j)).collect();
        let mut psi0 = vec![Complex64::new(0.0, 0.0); dim];
        let mut psi_phi = psi0.clone();
        for j in 0..order {
            psi0[offset + j] = Complex64::new(1.0, 0.0);
            psi_phi[offset + j] = Complex64::from_polar(1.0, j as f64 * phi);
        }
        SlitConfiguration::new(slits, Event::from_vector(&psi_phi)?, State::pure(&psi0)?)
    })
}
