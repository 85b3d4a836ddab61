//! Reference scenarios with fully analytic curves.
//!
//! Each scenario fixes the phase angles at beta = gamma = pi and varies the
//! preparation state |eta> (or the initial density matrix):
//!
//! * **Original** — uniform eta and initial state; the success probability is
//!   sin^2(omega (t + 1/2)) with sin^2(omega/2) = M/N, and the relative
//!   entropy of coherence saturates the entropic upper bound at every t.
//! * **Consistent** — eta is flat on the marked set and flat on the
//!   complement, tilted by a single weight parameter `m_eta` in (0, N).
//!   The rotation rate becomes omega_eta with sin^2(omega_eta/2) = m_eta/N
//!   while the phase offset keeps the original omega/2; the upper bound
//!   stays saturated and the optimal measurement time scales like
//!   m_eta^{-1/2}.
//! * **Inconsistent** — eta takes the two values sqrt((1 +- alpha)/N), each on
//!   exactly half of the marked set and half of the complement. The block
//!   probabilities split into the four branches P[e], Q[e] (e = +-) and the
//!   entropic upper bound is no longer saturated.
//! * **MixedFixedPoint** — the weighted mixture of the flat marked state and
//!   the flat unmarked state, rho(theta) = (1-theta)|nu><nu| +
//!   theta|mu><mu|. Its coherence profile is analytic; the curve reports the
//!   stationary reference profile (p_suc = theta at every t). Direct
//!   conjugation by the iteration reproduces it only at theta = 1/2 — see the
//!   acceptance suite, which measures the deviation rather than assuming it
//!   away.
//!
//! The curves are evaluated per-t in O(1) each and are data-parallel under
//! the `parallel` feature. Cross-checks against the direct and closed-form
//! engines live in the integration tests.

use crate::bounds::{l1_boxcar, DominantBranch};
use crate::engine::GroverConfig;
use crate::error::CoreError;
use crate::linalg::xlnx;
use crate::par;
use crate::state::{binary_entropy, DensityMatrix, MarkedSet, PureState};

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Scenario selector with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioKind {
    Original,
    Consistent { m_eta: f64 },
    Inconsistent { alpha: f64 },
    MixedFixedPoint { theta: f64 },
}

/// A scenario instance: register dimension and marked set come from the
/// embedded [`MarkedSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub marked: MarkedSet,
    pub kind: ScenarioKind,
}

impl ScenarioSpec {
    pub fn new(marked: MarkedSet, kind: ScenarioKind) -> Result<Self, CoreError> {
        let spec = Self { marked, kind };
        spec.validate()?;
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.marked.n_dim()
    }

    pub fn m(&self) -> usize {
        self.marked.len()
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        let n = self.n();
        let m = self.m();
        if m >= n {
            return Err(CoreError::ScenarioParameter(format!(
                "marked set must leave at least one unmarked state (M = {m}, N = {n})"
            )));
        }
        match self.kind {
            ScenarioKind::Original => {}
            ScenarioKind::Consistent { m_eta } => {
                if !(m_eta > 0.0 && m_eta < n as f64) {
                    return Err(CoreError::ScenarioParameter(format!(
                        "consistent weight m_eta must lie strictly between 0 and N = {n}, got {m_eta}"
                    )));
                }
            }
            ScenarioKind::Inconsistent { alpha } => {
                if !(0.0..1.0).contains(&alpha) {
                    return Err(CoreError::ScenarioParameter(format!(
                        "inconsistency parameter alpha must lie in [0, 1), got {alpha}"
                    )));
                }
                if !m.is_multiple_of(2) || !(n - m).is_multiple_of(2) {
                    return Err(CoreError::ScenarioParameter(format!(
                        "inconsistent scenario splits both blocks in half, so M and N - M must be even (M = {m}, N = {n})"
                    )));
                }
            }
            ScenarioKind::MixedFixedPoint { theta } => {
                if !(0.0..=1.0).contains(&theta) {
                    return Err(CoreError::ScenarioParameter(format!(
                        "mixture weight theta must lie in [0, 1], got {theta}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The preparation state |eta> of the scenario, for the pure scenarios.
    pub fn eta(&self) -> Option<PureState> {
        let n = self.n();
        match self.kind {
            ScenarioKind::Original => Some(PureState::uniform(n)),
            ScenarioKind::Consistent { m_eta } => {
                let m = self.m() as f64;
                let nf = n as f64;
                let on = (m_eta / (m * nf)).sqrt();
                let off = ((nf - m_eta) / ((nf - m) * nf)).sqrt();
                let mut amp = vec![C64::new(off, 0.0); n];
                for &x in self.marked.indices() {
                    amp[x] = C64::new(on, 0.0);
                }
                Some(PureState::from_dvector_unchecked(amp.into()))
            }
            ScenarioKind::Inconsistent { alpha } => {
                let nf = n as f64;
                let hi = ((1.0 + alpha) / nf).sqrt();
                let lo = ((1.0 - alpha) / nf).sqrt();
                let mut amp = vec![C64::new(0.0, 0.0); n];
                // The larger value goes to the lower half of each block.
                let marked = self.marked.indices();
                for (i, &x) in marked.iter().enumerate() {
                    amp[x] = C64::new(if i < marked.len() / 2 { hi } else { lo }, 0.0);
                }
                let unmarked = self.marked.complement();
                for (i, &y) in unmarked.iter().enumerate() {
                    amp[y] = C64::new(if i < unmarked.len() / 2 { hi } else { lo }, 0.0);
                }
                Some(PureState::from_dvector_unchecked(amp.into()))
            }
            ScenarioKind::MixedFixedPoint { .. } => None,
        }
    }

    /// Iteration configuration (beta = gamma = pi, uniform initial state) for
    /// the pure scenarios; None for the mixed fixed point.
    pub fn to_grover_config(&self) -> Option<GroverConfig> {
        let eta = self.eta()?;
        Some(
            GroverConfig::new(
                self.marked.clone(),
                PI,
                PI,
                eta,
                PureState::uniform(self.n()),
            )
            .expect("scenario dimensions are consistent by construction"),
        )
    }

    /// The mixture rho(theta) of the flat unmarked and flat marked states;
    /// None for the pure scenarios.
    pub fn initial_density(&self) -> Option<DensityMatrix> {
        let ScenarioKind::MixedFixedPoint { theta } = self.kind else {
            return None;
        };
        let n = self.n();
        let mu = PureState::uniform_over(n, self.marked.indices());
        let nu = PureState::uniform_over(n, &self.marked.complement());
        let mat = mu.density().matrix() * C64::new(theta, 0.0)
            + nu.density().matrix() * C64::new(1.0 - theta, 0.0);
        Some(DensityMatrix::from_matrix_unchecked(mat))
    }
}

/// Four-way split of the basis distribution in the inconsistent scenario:
/// probability on each half-block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockProbabilities {
    pub p_plus: f64,
    pub p_minus: f64,
    pub q_plus: f64,
    pub q_minus: f64,
}

/// One analytic curve point. `s1` is the von Neumann entropy of the state
/// (zero for the pure scenarios); `c1_lower`/`c1_upper` are the entropic
/// sandwich evaluated at this point's success probability, with the lower
/// bound taking the better of its two variants.
#[derive(Debug, Clone)]
pub struct ScenarioPoint {
    pub t: usize,
    pub p_suc: f64,
    pub c1: f64,
    pub cl1: f64,
    pub cg: f64,
    pub s1: f64,
    pub c1_lower: f64,
    pub c1_upper: f64,
    pub branch: DominantBranch,
    pub block: Option<BlockProbabilities>,
}

/// An analytic scenario curve for t = 0..=t_max.
#[derive(Debug, Clone)]
pub struct ScenarioCurve {
    pub spec: ScenarioSpec,
    pub points: Vec<ScenarioPoint>,
}

fn p_ln_ratio(p: f64, q: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * (q.ln() - p.ln())
    }
}

/// Entropic sandwich from scalars: lower takes the better of the binary
/// entropy variant and the dominant-branch variant.
fn entropic_bounds(n: usize, m: usize, p: f64, s1: f64, branch: DominantBranch) -> (f64, f64) {
    let omega = match branch {
        DominantBranch::Marked => p,
        DominantBranch::Unmarked => 1.0 - p,
    };
    let (lower_h, upper) = crate::bounds::entropic_coherence_sandwich(n, m, p, s1);
    let lower = lower_h.max(-omega.max(f64::MIN_POSITIVE).ln() - s1);
    (lower, upper)
}

/// Point shared by the original and consistent scenarios: flat blocks with
/// success probability `p`, pure state.
fn boxcar_point(t: usize, n: usize, m: usize, p: f64) -> ScenarioPoint {
    let nf = n as f64;
    let mf = m as f64;
    let pk = p / mf;
    let pl = (1.0 - p) / (nf - mf);
    let branch = if pk >= pl - 1e-12 {
        DominantBranch::Marked
    } else {
        DominantBranch::Unmarked
    };
    let c1 = -mf * xlnx(pk) - (nf - mf) * xlnx(pl);
    let cg = 1.0 - pk.max(pl);
    let (c1_lower, c1_upper) = entropic_bounds(n, m, p, 0.0, branch);
    ScenarioPoint {
        t,
        p_suc: p,
        c1,
        cl1: l1_boxcar(n, m, p),
        cg,
        s1: 0.0,
        c1_lower,
        c1_upper,
        branch,
        block: None,
    }
}

fn inconsistent_point(t: usize, n: usize, m: usize, omega: f64, alpha: f64) -> ScenarioPoint {
    let nf = n as f64;
    let mf = m as f64;
    let root = (1.0 - alpha * alpha).sqrt();
    let half = omega / 2.0;
    let st = (omega * t as f64 / 2.0).sin();
    let ct = (omega * t as f64 / 2.0).cos();
    let c_next = (omega * (t as f64 + 1.0) / 2.0).cos();
    let s_next = (omega * (t as f64 + 1.0) / 2.0).sin();
    let mut p_eps = [0.0; 2];
    let mut q_eps = [0.0; 2];
    for (slot, eps) in [(0usize, 1.0), (1usize, -1.0)] {
        let a_eps = 1.0 + eps * alpha + root;
        let p_amp = half.sin() + a_eps * st * c_next;
        p_eps[slot] = 0.5 * p_amp * p_amp;
        let q_amp = if t.is_multiple_of(2) {
            half.cos() - a_eps * st * s_next
        } else {
            half.cos() - a_eps * ct * c_next
        };
        q_eps[slot] = 0.5 * q_amp * q_amp;
    }
    let p = p_eps[0] + p_eps[1];
    let block = BlockProbabilities {
        p_plus: p_eps[0],
        p_minus: p_eps[1],
        q_plus: q_eps[0],
        q_minus: q_eps[1],
    };

    // Per-index probabilities on the four half-blocks.
    let marked_each = [2.0 * p_eps[0] / mf, 2.0 * p_eps[1] / mf];
    let unmarked_each = [
        2.0 * q_eps[0] / (nf - mf),
        2.0 * q_eps[1] / (nf - mf),
    ];
    let marked_max = marked_each[0].max(marked_each[1]);
    let unmarked_max = unmarked_each[0].max(unmarked_each[1]);
    let branch = if marked_max >= unmarked_max - 1e-12 {
        DominantBranch::Marked
    } else {
        DominantBranch::Unmarked
    };

    let c1 = p_ln_ratio(p_eps[0], mf / 2.0)
        + p_ln_ratio(p_eps[1], mf / 2.0)
        + p_ln_ratio(q_eps[0], (nf - mf) / 2.0)
        + p_ln_ratio(q_eps[1], (nf - mf) / 2.0); // entropy of the four flat half-blocks

    let abs_sum = mf / 2.0 * (marked_each[0].sqrt() + marked_each[1].sqrt())
        + (nf - mf) / 2.0 * (unmarked_each[0].sqrt() + unmarked_each[1].sqrt());
    let sq_sum = p_eps[0] + p_eps[1] + q_eps[0] + q_eps[1];
    let cl1 = abs_sum * abs_sum - sq_sum;
    let cg = 1.0 - marked_max.max(unmarked_max);
    let (c1_lower, c1_upper) = entropic_bounds(n, m, p, 0.0, branch);
    ScenarioPoint {
        t,
        p_suc: p,
        c1,
        cl1,
        cg,
        s1: 0.0,
        c1_lower,
        c1_upper,
        branch,
        block: Some(block),
    }
}

fn mixed_point(t: usize, n: usize, m: usize, theta: f64) -> ScenarioPoint {
    let nf = n as f64;
    let mf = m as f64;
    let pk = theta / mf;
    let pl = (1.0 - theta) / (nf - mf);
    let branch = if pk >= pl - 1e-12 {
        DominantBranch::Marked
    } else {
        DominantBranch::Unmarked
    };
    let s1 = binary_entropy(theta);
    // Diagonal entropy minus h(theta): theta ln M + (1-theta) ln (N-M).
    let c1 = theta * mf.ln() + (1.0 - theta) * (nf - mf).ln();
    let cl1 = theta * (mf - 1.0) + (1.0 - theta) * (nf - mf - 1.0);
    let cg = 1.0 - pk - pl;
    let (c1_lower, c1_upper) = entropic_bounds(n, m, theta, s1, branch);
    ScenarioPoint {
        t,
        p_suc: theta,
        c1,
        cl1,
        cg,
        s1,
        c1_lower,
        c1_upper,
        branch,
        block: None,
    }
}

fn point_at(spec: &ScenarioSpec, t: usize) -> ScenarioPoint {
    let n = spec.n();
    let m = spec.m();
    let nf = n as f64;
    let mf = m as f64;
    let omega = 2.0 * (mf / nf).sqrt().asin();
    match spec.kind {
        ScenarioKind::Original => {
            let p = (omega * (t as f64 + 0.5)).sin().powi(2);
            boxcar_point(t, n, m, p)
        }
        ScenarioKind::Consistent { m_eta } => {
            let omega_eta = 2.0 * (m_eta / nf).sqrt().asin();
            let p = (omega_eta * t as f64 + omega / 2.0).sin().powi(2);
            boxcar_point(t, n, m, p)
        }
        ScenarioKind::Inconsistent { alpha } => inconsistent_point(t, n, m, omega, alpha),
        ScenarioKind::MixedFixedPoint { theta } => mixed_point(t, n, m, theta),
    }
}

/// Evaluate the analytic curve for t = 0..=t_max (data-parallel by default).
pub fn curve(spec: &ScenarioSpec, t_max: usize) -> Result<ScenarioCurve, CoreError> {
    spec.validate()?;
    let points = par::map_indexed(t_max + 1, |t| point_at(spec, t));
    Ok(ScenarioCurve {
        spec: spec.clone(),
        points,
    })
}

/// Sequential twin of [`curve`], for benchmarking and verification.
pub fn curve_seq(spec: &ScenarioSpec, t_max: usize) -> Result<ScenarioCurve, CoreError> {
    spec.validate()?;
    let points = par::map_indexed_seq(t_max + 1, |t| point_at(spec, t));
    Ok(ScenarioCurve {
        spec: spec.clone(),
        points,
    })
}

/// The two integer candidates for the first success-probability peak of the
/// consistent scenario: floor and ceil of (pi - omega) / (2 omega_eta).
pub fn consistent_optimal_times(n: usize, m: usize, m_eta: f64) -> (usize, usize) {
    let nf = n as f64;
    let omega = 2.0 * ((m as f64 / nf).sqrt()).asin();
    let omega_eta = 2.0 * ((m_eta / nf).sqrt()).asin();
    let target = (PI - omega) / (2.0 * omega_eta);
    (target.floor() as usize, target.ceil() as usize)
}
