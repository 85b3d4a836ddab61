//! Trade-off bounds linking coherence quantifiers of the register state to
//! the success probability P on a marked set of size M inside dimension N.
//!
//! Geometric coherence sandwich:
//!
//! ```text
//! (N-1)/N * (1 - sqrt(1 - N/(N-1) * (tr rho^2 - P^2 - (1-P)^2)))
//!     <= C_g(rho) <= 1 - P/M,
//! ```
//!
//! with the companion statement P <= M * max_delta F(rho, delta); and the
//! entropic sandwich:
//!
//! ```text
//! h(P) - S(rho) <= C_1(rho) <= P ln(M/P) + (1-P) ln((N-M)/(1-P)) - S(rho),
//! ```
//!
//! plus the sharper branch-dependent lower bound -ln(Omega) - S(rho), where
//! Omega is P if the largest basis probability sits on a marked index and
//! 1 - P otherwise. All logarithms are natural; 0 ln 0 = 0 throughout.

use crate::coherence::{
    fidelity_with_incoherent, geometric_coherence_mixed, relative_entropy_of_coherence,
    CgOptions, IncoherentState,
};
use crate::state::{binary_entropy, DensityMatrix, MarkedSet};

/// Which coherence quantifier a [`BoundReport`] sandwiches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundQuantity {
    GeometricCoherence,
    RelativeEntropyCoherence,
}

/// Which block holds the largest basis probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominantBranch {
    Marked,
    Unmarked,
}

/// A two-sided bound evaluation: the quantifier value, the bracketing bounds,
/// and the success probability they were computed from.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub quantity: BoundQuantity,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    /// False when the lower bound is vacuous (at or below zero), which for
    /// the geometric sandwich happens exactly when tr(rho^2) <= P^2 + (1-P)^2.
    pub lower_active: bool,
    pub p_suc: f64,
}

impl BoundReport {
    /// value - lower; negative means the lower bound is violated.
    pub fn lower_slack(&self) -> f64 {
        self.value - self.lower
    }

    /// upper - value; negative means the upper bound is violated.
    pub fn upper_slack(&self) -> f64 {
        self.upper - self.value
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.lower_slack() >= -tol && self.upper_slack() >= -tol
    }
}

/// p ln(q/p) with the 0 ln 0 = 0 convention in both slots (the coefficient
/// p = 0 silences any log singularity).
fn p_ln_ratio(p: f64, q: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * (q.ln() - p.ln())
    }
}

/// Scalar form of the geometric sandwich: `(lower, upper, lower_active)` from
/// dimension, marked count, purity and success probability.
pub fn geometric_coherence_sandwich(
    n: usize,
    m: usize,
    purity: f64,
    p: f64,
) -> (f64, f64, bool) {
    let nf = n as f64;
    let gap = purity - p * p - (1.0 - p) * (1.0 - p);
    let radicand = (1.0 - nf / (nf - 1.0) * gap).max(0.0);
    let lower = (nf - 1.0) / nf * (1.0 - radicand.sqrt());
    let upper = 1.0 - p / m as f64;
    (lower, upper, gap > 0.0)
}

/// Fidelity of the state with the uniform distribution on the marked set —
/// the feasible point behind the success-probability bound, always at least
/// P/M.
pub fn fidelity_with_marked_uniform(rho: &DensityMatrix, marked: &MarkedSet) -> f64 {
    fidelity_with_incoherent(rho, &IncoherentState::uniform_over(marked))
}

/// Best available estimate of max_delta F(rho, delta). Pure states (purity
/// within 1e-10 of 1) get the analytic maximum max_x p(x); mixed states run
/// the simplex ascent and fold in the uniform-on-marked candidate, so the
/// estimate is a true fidelity of some feasible delta in every case.
pub fn max_incoherent_fidelity(
    rho: &DensityMatrix,
    marked: &MarkedSet,
    opts: &CgOptions,
) -> f64 {
    let diag_max = rho
        .diagonal_probabilities()
        .into_iter()
        .fold(0.0_f64, f64::max);
    if rho.purity() >= 1.0 - 1e-10 {
        return diag_max;
    }
    let ascent = geometric_coherence_mixed(rho, opts).max_fidelity;
    ascent.max(fidelity_with_marked_uniform(rho, marked))
}

/// Geometric-coherence sandwich for an arbitrary state.
///
/// The value is 1 minus the fidelity estimate of [`max_incoherent_fidelity`]:
/// analytic for pure states, simplex ascent plus feasible candidates for
/// mixed ones.
pub fn geometric_coherence_bounds(
    rho: &DensityMatrix,
    marked: &MarkedSet,
    opts: &CgOptions,
) -> BoundReport {
    let value = 1.0 - max_incoherent_fidelity(rho, marked, opts);
    let p = rho.success_probability(marked);
    let (lower, upper, lower_active) =
        geometric_coherence_sandwich(rho.dim(), marked.len(), rho.purity(), p);
    BoundReport {
        quantity: BoundQuantity::GeometricCoherence,
        value,
        lower,
        upper,
        lower_active,
        p_suc: p,
    }
}

/// Companion to the geometric upper bound: the success probability never
/// exceeds M times the best fidelity with a diagonal state.
#[derive(Debug, Clone)]
pub struct FidelitySuccessReport {
    pub p_suc: f64,
    /// max_delta F(rho, delta), never an underestimate of the candidates
    /// actually examined (ascent optimum, vertices, uniform-on-marked).
    pub max_fidelity: f64,
    /// M * max_fidelity.
    pub bound: f64,
}

impl FidelitySuccessReport {
    pub fn slack(&self) -> f64 {
        self.bound - self.p_suc
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack() >= -tol
    }
}

pub fn fidelity_success_bound(
    rho: &DensityMatrix,
    marked: &MarkedSet,
    opts: &CgOptions,
) -> FidelitySuccessReport {
    let max_fidelity = max_incoherent_fidelity(rho, marked, opts);
    let p_suc = rho.success_probability(marked);
    FidelitySuccessReport {
        p_suc,
        max_fidelity,
        bound: marked.len() as f64 * max_fidelity,
    }
}

/// Scalar form of the entropic sandwich: `(lower, upper)` with the binary
/// entropy lower variant, given dimension, marked count, success probability
/// and the state's von Neumann entropy.
pub fn entropic_coherence_sandwich(n: usize, m: usize, p: f64, s1: f64) -> (f64, f64) {
    let lower = binary_entropy(p) - s1;
    let upper = p_ln_ratio(p, m as f64) + p_ln_ratio(1.0 - p, (n - m) as f64) - s1;
    (lower, upper)
}

/// Entropic sandwich on the relative entropy of coherence.
pub fn entropic_coherence_bounds(rho: &DensityMatrix, marked: &MarkedSet) -> BoundReport {
    let value = relative_entropy_of_coherence(rho);
    let p = rho.success_probability(marked);
    let s1 = rho.von_neumann_entropy();
    let (lower, upper) = entropic_coherence_sandwich(rho.dim(), marked.len(), p, s1);
    BoundReport {
        quantity: BoundQuantity::RelativeEntropyCoherence,
        value,
        lower,
        upper,
        lower_active: lower > 0.0,
        p_suc: p,
    }
}

/// Branch-dependent lower bound -ln(Omega) - S(rho) on the relative entropy
/// of coherence, together with the branch that was taken.
///
/// The branch looks at where the largest basis probability lives; a marked
/// index within 1e-12 of the global maximum wins the tie, since any marked
/// maximizer validates the marked branch.
pub fn dominant_mass_lower_bound(rho: &DensityMatrix, marked: &MarkedSet) -> (f64, DominantBranch) {
    let probs = rho.diagonal_probabilities();
    let global_max = probs.iter().copied().fold(0.0_f64, f64::max);
    let marked_max = marked
        .indices()
        .iter()
        .map(|&x| probs[x])
        .fold(0.0_f64, f64::max);
    let p = rho.success_probability(marked);
    let (omega, branch) = if marked_max >= global_max - 1e-12 {
        (p, DominantBranch::Marked)
    } else {
        (1.0 - p, DominantBranch::Unmarked)
    };
    let s1 = rho.von_neumann_entropy();
    (-omega.max(f64::MIN_POSITIVE).ln() - s1, branch)
}

/// l1 coherence of a pure state whose amplitude moduli are flat on the marked
/// set and flat on its complement (the "boxcar" profile), as a function of
/// the success probability:
/// (sqrt(M P) + sqrt((N-M)(1-P)))^2 - 1.
pub fn l1_boxcar(n: usize, m: usize, p: f64) -> f64 {
    let nf = n as f64;
    let mf = m as f64;
    let root = (mf * p).sqrt() + ((nf - mf) * (1.0 - p)).sqrt();
    root * root - 1.0
}

/// Complementarity residual of the boxcar profile: (C_l1 + N P)/N - 1, which
/// is O(sqrt(M/N)) uniformly in P. Useful as a diagnostic of how closely the
/// l1 coherence mirrors 1 - P at scale N.
pub fn l1_boxcar_residual(n: usize, m: usize, p: f64) -> f64 {
    (l1_boxcar(n, m, p) + n as f64 * p) / n as f64 - 1.0
}
