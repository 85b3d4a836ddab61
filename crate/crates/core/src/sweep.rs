//! Randomized bound sweeps: throw seeded random states at every bound and
//! record the slacks.
//!
//! A sweep is the workhorse behind both the CLI's `bounds-sweep` command and
//! the acceptance checks. Trials are independent, seeded per-trial, and
//! collected in trial order, so results are identical whether the sweep runs
//! parallel or sequential.

use rand::Rng;

use crate::bounds::{
    dominant_mass_lower_bound, entropic_coherence_sandwich, fidelity_with_marked_uniform,
    geometric_coherence_sandwich, DominantBranch,
};
use crate::coherence::{geometric_coherence_mixed, relative_entropy_of_coherence, CgOptions};
use crate::par;
use crate::sample;
use crate::state::{DensityMatrix, MarkedSet};

/// What a sweep should generate.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub seed: u64,
    /// Register dimensions cycled through round-robin.
    pub dims: Vec<usize>,
    pub trials_pure: usize,
    pub trials_mixed: usize,
    pub cg: CgOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Pure,
    Mixed,
}

impl StateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateKind::Pure => "pure",
            StateKind::Mixed => "mixed",
        }
    }
}

/// Every bound evaluation for one random trial. All `*_slack` quantities are
/// nonnegative when the corresponding bound holds.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub trial: usize,
    pub kind: StateKind,
    pub n: usize,
    pub m: usize,
    pub purity: f64,
    pub p_suc: f64,
    pub cg: f64,
    pub cg_lower: f64,
    pub cg_upper: f64,
    pub cg_lower_active: bool,
    /// M * max_delta F(rho, delta), which must dominate p_suc.
    pub fidelity_bound: f64,
    pub c1: f64,
    pub c1_lower: f64,
    pub c1_dominant_lower: f64,
    pub branch: DominantBranch,
    pub c1_upper: f64,
    /// True only if the mixed-state ascent hit its iteration cap.
    pub cg_optimizer_capped: bool,
}

impl SweepRecord {
    /// The smallest slack across all six bound checks; nonnegative (up to
    /// tolerance) when every bound holds.
    pub fn min_slack(&self) -> f64 {
        let slacks = [
            self.cg - self.cg_lower,
            self.cg_upper - self.cg,
            self.fidelity_bound - self.p_suc,
            self.c1 - self.c1_lower,
            self.c1 - self.c1_dominant_lower,
            self.c1_upper - self.c1,
        ];
        slacks.into_iter().fold(f64::INFINITY, f64::min)
    }
}

fn evaluate_trial(cfg: &SweepConfig, trial: usize) -> SweepRecord {
    let mut rng = sample::rng_for_trial(cfg.seed, trial as u64);
    let kind = if trial < cfg.trials_pure {
        StateKind::Pure
    } else {
        StateKind::Mixed
    };
    let n = cfg.dims[trial % cfg.dims.len()];
    let marked = sample::random_marked(&mut rng, n);

    let rho = match kind {
        StateKind::Pure => sample::random_pure(&mut rng, n).density(),
        StateKind::Mixed => {
            // Every fourth mixed trial hugs the incoherent manifold, where
            // several bounds approach equality.
            if trial.is_multiple_of(4) {
                let eps = 10f64.powf(-rng.random_range(4.0..8.0));
                sample::random_near_diagonal(&mut rng, n, eps)
            } else {
                let rank = rng.random_range(1..=n);
                sample::random_density(&mut rng, n, rank)
            }
        }
    };

    record_for(&rho, &marked, kind, trial, &cfg.cg)
}

/// Evaluate every bound for one explicit state (exposed so tests can aim the
/// same reporting at hand-picked states).
pub fn record_for(
    rho: &DensityMatrix,
    marked: &MarkedSet,
    kind: StateKind,
    trial: usize,
    cg_opts: &CgOptions,
) -> SweepRecord {
    let n = rho.dim();
    let m = marked.len();
    let purity = rho.purity();
    let p_suc = rho.success_probability(marked);

    let (max_fidelity, capped) = if purity >= 1.0 - 1e-10 {
        let diag_max = rho
            .diagonal_probabilities()
            .into_iter()
            .fold(0.0_f64, f64::max);
        (diag_max, false)
    } else {
        let ascent = geometric_coherence_mixed(rho, cg_opts);
        let candidate = fidelity_with_marked_uniform(rho, marked);
        (ascent.max_fidelity.max(candidate), !ascent.converged)
    };
    let cg = 1.0 - max_fidelity;

    let (cg_lower, cg_upper, cg_lower_active) = geometric_coherence_sandwich(n, m, purity, p_suc);
    let c1 = relative_entropy_of_coherence(rho);
    let s1 = rho.von_neumann_entropy();
    let (c1_lower, c1_upper) = entropic_coherence_sandwich(n, m, p_suc, s1);
    let (c1_dominant_lower, branch) = dominant_mass_lower_bound(rho, marked);

    SweepRecord {
        trial,
        kind,
        n,
        m,
        purity,
        p_suc,
        cg,
        cg_lower,
        cg_upper,
        cg_lower_active,
        fidelity_bound: m as f64 * max_fidelity,
        c1,
        c1_lower,
        c1_dominant_lower,
        branch,
        c1_upper,
        cg_optimizer_capped: capped,
    }
}

/// Run the sweep (data-parallel under the `parallel` feature).
pub fn run(cfg: &SweepConfig) -> Vec<SweepRecord> {
    let total = cfg.trials_pure + cfg.trials_mixed;
    par::map_indexed(total, |trial| evaluate_trial(cfg, trial))
}

/// Sequential twin of [`run`].
pub fn run_seq(cfg: &SweepConfig) -> Vec<SweepRecord> {
    let total = cfg.trials_pure + cfg.trials_mixed;
    par::map_indexed_seq(total, |trial| evaluate_trial(cfg, trial))
}
