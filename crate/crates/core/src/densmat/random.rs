//! Random states and unitaries.
//!
//! All samplers take an explicit RNG. [`seeded_rng`] and [`stream_rng`] build a
//! ChaCha8 generator (a counter-based stream cipher), so a `(seed, stream)`
//! pair yields the same numbers on every platform and thread layout.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::state::{DensityMatrix, PureState};
use crate::error::{Error, Result};

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` under master `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let entries = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_row_major(rows, cols, entries).expect("non-empty shape")
}

/// `G G^† / Tr(G G^†)` with `G` a `dim × rank` Ginibre matrix.
///
/// `rank == dim` samples the Hilbert–Schmidt ensemble.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::InvalidParameter(format!("rank {rank} must lie in 1..={dim}")));
    }
    let g = ginibre(dim, rank, rng);
    let w = &g * &g.adjoint();
    let rho = DensityMatrix::from_unnormalized(w)?;
    if rank == 1 {
        rho.known_pure()
    } else {
        Ok(rho)
    }
}

pub fn random_density_seeded(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density(dim, rank, &mut seeded_rng(seed))
}

/// Density matrix of uniformly random rank in `1..=dim`.
pub fn random_mixed<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let rank = rng.random_range(1..=dim);
    random_density(dim, rank, rng).expect("rank within range")
}

/// Haar-random unit vector.
pub fn random_pure<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    let amps: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    PureState::normalized(amps).expect("Gaussian vector is nonzero")
}

/// Haar-random unitary from the QR factorization of a Ginibre matrix.
///
/// Gram–Schmidt produces `R` with a positive real diagonal, which is the phase
/// convention that makes `Q` Haar distributed.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..dim).map(|j| (0..dim).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..dim {
        let (done, rest) = cols.split_at_mut(j);
        let col = &mut rest[0];
        // Second pass restores orthogonality lost to rounding.
        for _ in 0..2 {
            for q in done.iter() {
                let proj: Complex64 = q.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
                for (c, a) in col.iter_mut().zip(q) {
                    *c -= proj * a;
                }
            }
            let norm = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in col.iter_mut() {
                *c /= norm;
            }
        }
    }
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            u[(i, j)] = v;
        }
    }
    u
}
