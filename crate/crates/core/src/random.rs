//! Seeded random generators for states, projections and observables.
//!
//! All randomness goes through [`sample_rng`]: a ChaCha8 generator keyed by
//! the 64-bit run seed, with the sample index selecting the ChaCha stream.
//! Sample `i` therefore sees the same numbers no matter how samples are
//! scheduled across threads.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{reassemble, spectral_sign, ComplexMatrix, HermitianMatrix};
use crate::logic::{Event, State};

pub type SampleRng = ChaCha8Rng;

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `n×m` matrix of i.i.d. standard complex Gaussians.
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// `(G + G†)/2` for a Ginibre `G`.
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    HermitianMatrix::hermitian_part(&ginibre(rng, n, n)).expect("square")
}

/// Density matrix `GG†/tr(GG†)`.
pub fn random_state(rng: &mut impl Rng, n: usize) -> State {
    let g = ginibre(rng, n, n);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    let rho = HermitianMatrix::hermitian_part(&w.scale_real(1.0 / tr)).expect("square");
    State::new(rho).expect("Ginibre states are valid")
}

/// Normalized Haar-like pure state vector.
pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..n).map(|_| gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Eigenbasis of a random Hermitian matrix, columns orthonormal.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    random_hermitian(rng, n)
        .eig()
        .expect("random Hermitian matrices diagonalize")
        .vectors
}

/// Projection onto the span of the given columns of an orthonormal basis.
pub fn projection_onto(basis: &ComplexMatrix, columns: &[usize]) -> Event {
    let n = basis.rows();
    let mut weights = vec![0.0; basis.cols()];
    for &c in columns {
        weights[c] = 1.0;
    }
    let p = reassemble(basis, &weights);
    debug_assert_eq!(p.rows(), n);
    Event::new(HermitianMatrix::hermitian_part(&p).expect("square"))
        .expect("eigenprojections are projections")
}

/// Rank-`rank` projection onto a random subspace.
pub fn random_projection(rng: &mut impl Rng, n: usize, rank: usize) -> Event {
    let basis = random_unitary(rng, n);
    let cols: Vec<usize> = (0..rank.min(n)).collect();
    projection_onto(&basis, &cols)
}

/// `count` pairwise orthogonal nonzero projections of random ranks.
///
/// The ranks are drawn so that at least one unit of rank goes to each event
/// and their total does not exceed `n`; the events do not necessarily sum to
/// the identity. Requires `count ≤ n`.
pub fn random_orthogonal_events(rng: &mut impl Rng, n: usize, count: usize) -> Vec<Event> {
    assert!(
        count <= n,
        "cannot fit {count} orthogonal events in dimension {n}"
    );
    let basis = random_unitary(rng, n);
    let total = rng.random_range(count..=n);
    let mut ranks = vec![1usize; count];
    for _ in count..total {
        let i = rng.random_range(0..count);
        ranks[i] += 1;
    }
    let mut cols: Vec<usize> = (0..n).collect();
    cols.shuffle(rng);
    let mut start = 0;
    ranks
        .iter()
        .map(|&r| {
            let e = projection_onto(&basis, &cols[start..start + r]);
            start += r;
            e
        })
        .collect()
}

/// Random event of uniformly chosen rank in `0..=n`.
pub fn random_event(rng: &mut impl Rng, n: usize) -> Event {
    let rank = rng.random_range(0..=n);
    random_projection(rng, n, rank)
}

/// Random Hermitian observable of operator norm exactly one.
pub fn random_unit_observable(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    let h = random_hermitian(rng, n);
    let norm = h
        .operator_norm()
        .expect("random Hermitian matrices diagonalize");
    h.scale(1.0 / norm)
}

/// Random dichotomic (±1-valued) observable.
pub fn random_sign_observable(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
    spectral_sign(&random_hermitian(rng, n)).expect("random Hermitian matrices diagonalize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn streams_are_independent_of_order() {
        let a: Vec<u64> = (0..4).map(|i| sample_rng(7, i).next_u64()).collect();
        let b: Vec<u64> = (0..4).rev().map(|i| sample_rng(7, i).next_u64()).collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(a[0], a[1]);
        assert_ne!(sample_rng(7, 0).next_u64(), sample_rng(8, 0).next_u64());
    }

    #[test]
    fn orthogonal_events_are_orthogonal() {
        for seed in 0..50 {
            let mut rng = sample_rng(seed, 0);
            let n = 3 + seed as usize % 6;
            let evs = random_orthogonal_events(&mut rng, n, 3);
            let total: usize = evs.iter().map(|e| e.rank()).sum();
            assert!(total <= n);
            for (i, e) in evs.iter().enumerate() {
                assert!(e.rank() >= 1);
                for f in &evs[i + 1..] {
                    assert!(e.is_orthogonal(f).unwrap());
                }
            }
        }
    }

    #[test]
    fn unit_observables_have_unit_norm() {
        let mut rng = sample_rng(1, 1);
        for n in 1..6 {
            let h = random_unit_observable(&mut rng, n);
            assert!((h.operator_norm().unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
