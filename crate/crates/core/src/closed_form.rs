//! Closed-form engine for the generalized iteration.
//!
//! Rescaling every amplitude by the corresponding component of |eta>
//! (k'_z = k_z / eta_z) collapses the dynamics to a two-term linear recursion
//! for the weighted block means
//!
//! ```text
//! Kbar'(t) = sum_{x in M} |eta_x|^2 k'_x(t) / W_k,
//! Lbar'(t) = sum_{y not in M} |eta_y|^2 l'_y(t) / W_l,
//! ```
//!
//! with W_k + W_l = 1, while the deviations from the block means evolve by
//! pure phases: Delta k'_x picks up (-1)^t e^{i gamma t} and Delta l'_y picks
//! up (-1)^t. Diagonalizing the 2x2 recursion gives unit-modulus eigenvalues
//! e^{i omega_pm} with
//!
//! ```text
//! cos omega  = W_k cos((beta+gamma)/2) + W_l cos((beta-gamma)/2),
//! omega_pm   = pi + (beta+gamma)/2 +- omega,
//! ```
//!
//! so every amplitude at every t is available in O(1) once the four spectral
//! coefficients xi_1..xi_4 are fixed by the initial block means. The engine
//! shares the sign and phase conventions of [`crate::engine`] exactly, and the
//! test suite compares the two amplitude by amplitude.
//!
//! The construction genuinely breaks down in a handful of situations (a zero
//! component in eta, an empty-weight block, gamma = 0 mod 2pi, a vanishing
//! coupling b, degenerate eigenvalues). Those return
//! [`ClosedFormUnavailable`] naming the violated assumption instead of
//! silently producing garbage.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::engine::{pure_point, GroverConfig, TrajectoryPoint};
use crate::par;
use crate::state::{MarkedSet, PureState};

/// Why the closed form cannot be used for a given configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClosedFormUnavailable {
    #[error("eta component {index} has magnitude {magnitude:.3e} <= 1e-12; rescaled amplitudes are undefined")]
    ZeroEtaComponent { index: usize, magnitude: f64 },
    #[error("marked weight W_k = {0:.3e} <= 1e-12; the marked block mean is undefined")]
    VanishingMarkedWeight(f64),
    #[error("unmarked weight W_l = {0:.3e} <= 1e-12; the unmarked block mean is undefined")]
    VanishingUnmarkedWeight(f64),
    #[error("gamma = {gamma:.6} is within 1e-9 of 0 mod 2pi; the oracle phase degenerates and the two-term reduction does not apply")]
    GammaNearZero { gamma: f64 },
    #[error("coupling b = (1 - e^(i beta)) W_l has modulus {0:.3e} <= 1e-9; xi_3 and xi_4 are undefined")]
    BNearZero(f64),
    #[error("eigenvalue splitting |lambda_+ - lambda_-| = {0:.3e} <= 1e-9; the distinct-eigenvalue solution is invalid")]
    DegenerateEigenvalues(f64),
}

/// Spectral data and initial-condition coefficients of the two-term recursion,
/// ready for O(1) evaluation at any iteration count.
#[derive(Debug, Clone)]
pub struct ClosedFormSolution {
    marked: MarkedSet,
    complement: Vec<usize>,
    eta: PureState,
    gamma: f64,
    w_k: f64,
    w_l: f64,
    omega: f64,
    omega_plus: f64,
    omega_minus: f64,
    a: C64,
    b: C64,
    xi: [C64; 4],
    kbar0: C64,
    lbar0: C64,
    /// Deviations of the rescaled marked amplitudes from their block mean, in
    /// the order of `marked.indices()`.
    delta_k: Vec<C64>,
    /// Same for the unmarked block, in the order of `complement`.
    delta_l: Vec<C64>,
}

/// Solve the recursion for the given configuration.
pub fn solve(cfg: &GroverConfig) -> Result<ClosedFormSolution, ClosedFormUnavailable> {
    let n = cfg.n();
    let (beta, gamma) = (cfg.beta(), cfg.gamma());
    let eta = cfg.eta();

    for (z, amp) in eta.amplitudes().iter().enumerate() {
        if amp.norm() <= 1e-12 {
            return Err(ClosedFormUnavailable::ZeroEtaComponent {
                index: z,
                magnitude: amp.norm(),
            });
        }
    }

    let marked = cfg.marked().clone();
    let complement = marked.complement();
    let w_k: f64 = marked
        .indices()
        .iter()
        .map(|&x| eta.amplitude(x).norm_sqr())
        .sum();
    let w_l: f64 = complement
        .iter()
        .map(|&y| eta.amplitude(y).norm_sqr())
        .sum();
    if w_k <= 1e-12 {
        return Err(ClosedFormUnavailable::VanishingMarkedWeight(w_k));
    }
    if w_l <= 1e-12 {
        return Err(ClosedFormUnavailable::VanishingUnmarkedWeight(w_l));
    }

    let gamma_mod = gamma.rem_euclid(2.0 * PI);
    if gamma_mod <= 1e-9 || 2.0 * PI - gamma_mod <= 1e-9 {
        return Err(ClosedFormUnavailable::GammaNearZero { gamma });
    }

    let one = C64::new(1.0, 0.0);
    let e_ib = C64::from_polar(1.0, beta);
    let e_ig = C64::from_polar(1.0, gamma);
    let u = one - e_ib;

    let b = u * w_l;
    if b.norm() <= 1e-9 {
        return Err(ClosedFormUnavailable::BNearZero(b.norm()));
    }
    let a = u * e_ig * w_k - e_ig;

    let cos_omega = (w_k * ((beta + gamma) / 2.0).cos() + w_l * ((beta - gamma) / 2.0).cos())
        .clamp(-1.0, 1.0);
    let omega = cos_omega.acos();
    let omega_plus = PI + (beta + gamma) / 2.0 + omega;
    let omega_minus = PI + (beta + gamma) / 2.0 - omega;
    let lambda_plus = C64::from_polar(1.0, omega_plus);
    let lambda_minus = C64::from_polar(1.0, omega_minus);
    let splitting = (lambda_plus - lambda_minus).norm();
    if splitting <= 1e-9 {
        return Err(ClosedFormUnavailable::DegenerateEigenvalues(splitting));
    }

    // Rescaled initial amplitudes and their block means.
    let init = cfg.initial().amplitudes();
    let rescaled: Vec<C64> = (0..n).map(|z| init[z] / eta.amplitude(z)).collect();
    let kbar0 = marked
        .indices()
        .iter()
        .map(|&x| eta.amplitude(x).norm_sqr() * rescaled[x])
        .sum::<C64>()
        / w_k;
    let lbar0 = complement
        .iter()
        .map(|&y| eta.amplitude(y).norm_sqr() * rescaled[y])
        .sum::<C64>()
        / w_l;
    let delta_k: Vec<C64> = marked.indices().iter().map(|&x| rescaled[x] - kbar0).collect();
    let delta_l: Vec<C64> = complement.iter().map(|&y| rescaled[y] - lbar0).collect();

    let denom = lambda_minus - lambda_plus;
    let xi1 = ((lambda_minus - a) * kbar0 - b * lbar0) / denom;
    let xi2 = ((lambda_plus - a) * kbar0 - b * lbar0) / denom;
    let xi3 = (lambda_plus - a) / b * xi1;
    let xi4 = (lambda_minus - a) / b * xi2;

    Ok(ClosedFormSolution {
        marked,
        complement,
        eta: eta.clone(),
        gamma,
        w_k,
        w_l,
        omega,
        omega_plus,
        omega_minus,
        a,
        b,
        xi: [xi1, xi2, xi3, xi4],
        kbar0,
        lbar0,
        delta_k,
        delta_l,
    })
}

impl ClosedFormSolution {
    pub fn marked(&self) -> &MarkedSet {
        &self.marked
    }

    pub fn w_k(&self) -> f64 {
        self.w_k
    }

    pub fn w_l(&self) -> f64 {
        self.w_l
    }

    /// Rotation angle omega in [0, pi].
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega_plus(&self) -> f64 {
        self.omega_plus
    }

    pub fn omega_minus(&self) -> f64 {
        self.omega_minus
    }

    pub fn lambda_plus(&self) -> C64 {
        C64::from_polar(1.0, self.omega_plus)
    }

    pub fn lambda_minus(&self) -> C64 {
        C64::from_polar(1.0, self.omega_minus)
    }

    /// Recursion coefficient a (marked-mean self-coupling).
    pub fn a(&self) -> C64 {
        self.a
    }

    /// Recursion coefficient b (coupling of the unmarked mean into the marked
    /// mean).
    pub fn b(&self) -> C64 {
        self.b
    }

    /// Spectral coefficients [xi1, xi2, xi3, xi4].
    pub fn xi(&self) -> [C64; 4] {
        self.xi
    }

    /// Marked rescaled block mean at iteration t.
    pub fn kbar(&self, t: usize) -> C64 {
        let tf = t as f64;
        self.xi[0] * C64::from_polar(1.0, self.omega_plus * tf)
            - self.xi[1] * C64::from_polar(1.0, self.omega_minus * tf)
    }

    /// Unmarked rescaled block mean at iteration t.
    pub fn lbar(&self, t: usize) -> C64 {
        let tf = t as f64;
        self.xi[2] * C64::from_polar(1.0, self.omega_plus * tf)
            - self.xi[3] * C64::from_polar(1.0, self.omega_minus * tf)
    }

    pub fn kbar0(&self) -> C64 {
        self.kbar0
    }

    pub fn lbar0(&self) -> C64 {
        self.lbar0
    }

    /// Phase factor multiplying the marked deviations at iteration t.
    fn marked_deviation_phase(&self, t: usize) -> C64 {
        let sign = if t % 2 == 1 { -1.0 } else { 1.0 };
        C64::from_polar(sign, self.gamma * t as f64)
    }

    /// Full register state after t iterations.
    pub fn state_at(&self, t: usize) -> PureState {
        let n = self.marked.n_dim();
        let kbar = self.kbar(t);
        let lbar = self.lbar(t);
        let phase_k = self.marked_deviation_phase(t);
        let sign_l = C64::new(if t % 2 == 1 { -1.0 } else { 1.0 }, 0.0);
        let mut amp = DVector::from_element(n, C64::new(0.0, 0.0));
        for (i, &x) in self.marked.indices().iter().enumerate() {
            amp[x] = self.eta.amplitude(x) * (kbar + phase_k * self.delta_k[i]);
        }
        for (i, &y) in self.complement.iter().enumerate() {
            amp[y] = self.eta.amplitude(y) * (lbar + sign_l * self.delta_l[i]);
        }
        PureState::from_dvector_unchecked(amp)
    }

    /// Probability on the marked set after t iterations, without materializing
    /// the full state.
    pub fn success_probability_at(&self, t: usize) -> f64 {
        let kbar = self.kbar(t);
        let phase_k = self.marked_deviation_phase(t);
        self.marked
            .indices()
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                (self.eta.amplitude(x) * (kbar + phase_k * self.delta_k[i])).norm_sqr()
            })
            .sum()
    }
}

/// Closed-form trajectory with the same observables as the direct engine.
/// Each t is evaluated independently (data-parallel under the `parallel`
/// feature).
pub fn trajectory(
    cfg: &GroverConfig,
    t_max: usize,
) -> Result<Vec<TrajectoryPoint>, ClosedFormUnavailable> {
    let sol = solve(cfg)?;
    let marked = cfg.marked();
    Ok(par::map_indexed(t_max + 1, |t| {
        pure_point(t, sol.state_at(t), marked)
    }))
}

/// Sequential twin of [`trajectory`], for benchmarking and verification.
pub fn trajectory_seq(
    cfg: &GroverConfig,
    t_max: usize,
) -> Result<Vec<TrajectoryPoint>, ClosedFormUnavailable> {
    let sol = solve(cfg)?;
    let marked = cfg.marked();
    Ok(par::map_indexed_seq(t_max + 1, |t| {
        pure_point(t, sol.state_at(t), marked)
    }))
}
