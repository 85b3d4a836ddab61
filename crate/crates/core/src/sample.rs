//! Seeded random states and configurations for sweeps, property tests and
//! cross-engine comparisons.
//!
//! Everything is driven by an explicit RNG so that any consumer (CLI sweep,
//! acceptance test, benchmark) is reproducible from a single u64 seed.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::closed_form;
use crate::engine::GroverConfig;
use crate::state::{DensityMatrix, MarkedSet, PureState};

pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Independent stream for a numbered sub-task of a seeded computation, so
/// parallel trials stay reproducible regardless of scheduling.
pub fn rng_for_trial(seed: u64, trial: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-like random pure state: normalized vector of complex Gaussians.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PureState {
    loop {
        let amp: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        if let Ok(psi) = PureState::normalized(amp) {
            return psi;
        }
    }
}

/// Random density matrix of the given rank: rho = A A^dag / tr(A A^dag) with
/// A an n-by-rank complex Gaussian matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> DensityMatrix {
    let rank = rank.clamp(1, n);
    let a = DMatrix::from_fn(n, rank, |_, _| complex_gaussian(rng));
    let mut rho = &a * a.adjoint();
    let trace: f64 = rho.diagonal().iter().map(|z| z.re).sum();
    rho /= C64::new(trace, 0.0);
    DensityMatrix::from_matrix_unchecked(rho)
}

/// Random point of the probability simplex (flat Dirichlet).
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let sum: f64 = v.iter().sum();
    for x in &mut v {
        *x /= sum;
    }
    v
}

/// Nearly diagonal state: a random diagonal plus an eps-sized random full
/// state. Exercises the bounds near the incoherent manifold, where several
/// of them become tight.
pub fn random_near_diagonal<R: Rng + ?Sized>(rng: &mut R, n: usize, eps: f64) -> DensityMatrix {
    let diag = random_simplex(rng, n);
    let noise = random_density(rng, n, n);
    let mut mat = noise.matrix() * C64::new(eps, 0.0);
    for (i, &p) in diag.iter().enumerate() {
        mat[(i, i)] += C64::new((1.0 - eps) * p, 0.0);
    }
    DensityMatrix::from_matrix_unchecked(mat)
}

/// Random marked set with the given size.
pub fn random_marked_with<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> MarkedSet {
    let indices = rand::seq::index::sample(rng, n, m).into_vec();
    MarkedSet::new(n, indices).expect("sampled indices are valid by construction")
}

/// Random marked set with 1 <= M <= N/2.
pub fn random_marked<R: Rng + ?Sized>(rng: &mut R, n: usize) -> MarkedSet {
    let m = rng.random_range(1..=(n / 2).max(1));
    random_marked_with(rng, n, m)
}

/// Random configuration suitable for a direct-vs-closed-form comparison:
/// both phase angles in (0.1, 2pi - 0.1), fully random complex eta and
/// initial amplitudes.
///
/// Configurations are resampled until the closed form exists with a safety
/// margin: every |eta_z| >= 1e-2 and the eigenvalue splitting satisfies
/// 2 sin(omega) >= 1e-3. The closed form divides by both quantities, so
/// configurations in their rounding-dominated neighborhoods cannot be
/// compared at tight tolerances by any method.
pub fn random_crosscheck_config<R: Rng + ?Sized>(rng: &mut R, n: usize) -> GroverConfig {
    loop {
        let marked = random_marked(rng, n);
        let beta = rng.random_range(0.1..(2.0 * std::f64::consts::PI - 0.1));
        let gamma = rng.random_range(0.1..(2.0 * std::f64::consts::PI - 0.1));
        let eta = random_pure(rng, n);
        if eta
            .amplitudes()
            .iter()
            .any(|z| z.norm() < 1e-2)
        {
            continue;
        }
        let initial = random_pure(rng, n);
        let cfg = GroverConfig::new(marked, beta, gamma, eta, initial)
            .expect("dimensions agree by construction");
        match closed_form::solve(&cfg) {
            Ok(sol) if sol.omega().sin().abs() >= 5e-4 => return cfg,
            _ => continue,
        }
    }
}
