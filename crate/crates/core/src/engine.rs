//! Direct matrix-iteration engine for the generalized amplitude-amplification
//! step
//!
//! ```text
//! G = [ (1 - e^{i beta}) |eta><eta| - I ] * J(gamma),
//! ```
//!
//! where `J(gamma)` multiplies every marked amplitude by `e^{i gamma}` and
//! leaves the rest alone. The textbook iteration is the special case
//! beta = gamma = pi with uniform `eta`. The overall sign convention above is
//! shared verbatim by the closed-form engine so the two are comparable
//! amplitude by amplitude, not just through probabilities.
//!
//! For register dimensions up to 4096 the iteration matrix is materialized
//! densely and applied by multiplication; beyond that G is applied matrix-free
//! as a diagonal pass plus a rank-one update (O(N) per pure-state step).
//! Trajectories are deliberately sequential in t; parallelism in this crate
//! lives at the level of sweeps and per-t closed-form evaluation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::coherence::{
    geometric_coherence_mixed, l1_coherence, relative_entropy_of_coherence, CgOptions,
    GeometricCoherenceResult,
};
use crate::error::CoreError;
use crate::state::{shannon_entropy, DensityMatrix, MarkedSet, PureState};

/// Largest dimension for which the iteration matrix is materialized densely.
pub const DENSE_LIMIT: usize = 4096;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Full description of one amplitude-amplification run: marked set, the two
/// phase angles, the reflection axis |eta>, and the initial register state.
#[derive(Debug, Clone)]
pub struct GroverConfig {
    marked: MarkedSet,
    beta: f64,
    gamma: f64,
    eta: PureState,
    initial: PureState,
}

impl GroverConfig {
    pub fn new(
        marked: MarkedSet,
        beta: f64,
        gamma: f64,
        eta: PureState,
        initial: PureState,
    ) -> Result<Self, CoreError> {
        let n = marked.n_dim();
        if eta.dim() != n {
            return Err(CoreError::DimensionMismatch(format!(
                "eta has dimension {} but the marked set lives in dimension {n}",
                eta.dim()
            )));
        }
        if initial.dim() != n {
            return Err(CoreError::DimensionMismatch(format!(
                "initial state has dimension {} but the marked set lives in dimension {n}",
                initial.dim()
            )));
        }
        Ok(Self {
            marked,
            beta,
            gamma,
            eta,
            initial,
        })
    }

    /// The textbook iteration: beta = gamma = pi, uniform eta, and the uniform
    /// superposition as the initial state.
    pub fn original(n: usize, marked: MarkedSet) -> Result<Self, CoreError> {
        let uniform = PureState::uniform(n);
        Self::new(
            marked,
            std::f64::consts::PI,
            std::f64::consts::PI,
            uniform.clone(),
            uniform,
        )
    }

    /// Same angles and eta, different starting state.
    pub fn with_initial(mut self, initial: PureState) -> Result<Self, CoreError> {
        if initial.dim() != self.n() {
            return Err(CoreError::DimensionMismatch(format!(
                "initial state has dimension {} but the register has dimension {}",
                initial.dim(),
                self.n()
            )));
        }
        self.initial = initial;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.marked.n_dim()
    }

    pub fn marked(&self) -> &MarkedSet {
        &self.marked
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eta(&self) -> &PureState {
        &self.eta
    }

    pub fn initial(&self) -> &PureState {
        &self.initial
    }
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

/// Diagonal oracle operator J(gamma): phase e^{i gamma} on marked indices.
pub fn oracle_phase_matrix(marked: &MarkedSet, gamma: f64) -> DMatrix<C64> {
    let n = marked.n_dim();
    let mut m = DMatrix::from_diagonal_element(n, n, C64::new(1.0, 0.0));
    let phase = C64::from_polar(1.0, gamma);
    for &x in marked.indices() {
        m[(x, x)] = phase;
    }
    m
}

/// Reflection-like operator (1 - e^{i beta}) |eta><eta| - I.
pub fn reflection_matrix(eta: &PureState, beta: f64) -> DMatrix<C64> {
    let n = eta.dim();
    let coeff = C64::new(1.0, 0.0) - C64::from_polar(1.0, beta);
    let amp = eta.amplitudes();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = coeff * amp[i] * amp[j].conj();
        }
        m[(i, i)] -= C64::new(1.0, 0.0);
    }
    m
}

/// Dense iteration matrix G. Only materialized up to [`DENSE_LIMIT`].
pub fn iteration_matrix(cfg: &GroverConfig) -> Result<DMatrix<C64>, CoreError> {
    let n = cfg.n();
    if n > DENSE_LIMIT {
        return Err(CoreError::TooLargeForDense(n));
    }
    let mut g = reflection_matrix(&cfg.eta, cfg.beta);
    let phase = C64::from_polar(1.0, cfg.gamma);
    for &x in cfg.marked.indices() {
        for i in 0..n {
            g[(i, x)] *= phase;
        }
    }
    Ok(g)
}

/// Matrix-free application of G to a state vector, in place: the diagonal
/// oracle pass followed by the rank-one-plus-identity reflection.
pub fn apply_iteration(cfg: &GroverConfig, psi: &mut DVector<C64>) {
    let phase = C64::from_polar(1.0, cfg.gamma);
    for &x in cfg.marked.indices() {
        psi[x] *= phase;
    }
    let eta = cfg.eta.amplitudes();
    let overlap: C64 = eta.iter().zip(psi.iter()).map(|(e, p)| e.conj() * p).sum();
    let coeff = (C64::new(1.0, 0.0) - C64::from_polar(1.0, cfg.beta)) * overlap;
    for i in 0..psi.len() {
        psi[i] = coeff * eta[i] - psi[i];
    }
}

// ---------------------------------------------------------------------------
// Trajectories
// ---------------------------------------------------------------------------

/// One point of a pure-state trajectory: the register state after t
/// iterations together with its observables. Coherences of pure states are
/// cheap, so all of them are always filled in.
#[derive(Debug, Clone)]
pub struct TrajectoryPoint {
    pub t: usize,
    pub state: PureState,
    /// Probability of measuring a marked index.
    pub p_suc: f64,
    /// Relative entropy of coherence (nats).
    pub c1: f64,
    /// l1 coherence.
    pub cl1: f64,
    /// Geometric coherence.
    pub cg: f64,
}

pub(crate) fn pure_point(t: usize, state: PureState, marked: &MarkedSet) -> TrajectoryPoint {
    let probs = state.probabilities();
    let p_suc: f64 = marked.indices().iter().map(|&x| probs[x]).sum();
    let c1 = shannon_entropy(&probs);
    let mut abs_sum = 0.0;
    let mut sq_sum = 0.0;
    for &p in &probs {
        abs_sum += p.sqrt();
        sq_sum += p;
    }
    let cl1 = abs_sum * abs_sum - sq_sum;
    let cg = 1.0 - probs.into_iter().fold(0.0_f64, f64::max);
    TrajectoryPoint {
        t,
        state,
        p_suc,
        c1,
        cl1,
        cg,
    }
}

/// Evolve the configured initial state for t = 0..=t_max and record the state
/// and its observables at every step.
pub fn run_pure(cfg: &GroverConfig, t_max: usize) -> Vec<TrajectoryPoint> {
    let n = cfg.n();
    let dense = (n <= DENSE_LIMIT).then(|| iteration_matrix(cfg).expect("within dense limit"));
    let mut psi = cfg.initial.amplitudes().clone();
    let mut points = Vec::with_capacity(t_max + 1);
    points.push(pure_point(
        0,
        PureState::from_dvector_unchecked(psi.clone()),
        &cfg.marked,
    ));
    for t in 1..=t_max {
        match &dense {
            Some(g) => psi = g * &psi,
            None => apply_iteration(cfg, &mut psi),
        }
        points.push(pure_point(
            t,
            PureState::from_dvector_unchecked(psi.clone()),
            &cfg.marked,
        ));
    }
    points
}

/// Observable selection for density-matrix trajectories. The geometric
/// coherence of a mixed state costs an optimizer run per step, so it is off
/// unless requested.
#[derive(Debug, Clone, Default)]
pub struct DensityObservables {
    pub with_cg: bool,
    pub cg: CgOptions,
}

/// One point of a density-matrix trajectory.
#[derive(Debug, Clone)]
pub struct DensityTrajectoryPoint {
    pub t: usize,
    pub state: DensityMatrix,
    pub p_suc: f64,
    pub c1: f64,
    pub cl1: f64,
    /// Present only when requested via [`DensityObservables::with_cg`].
    pub cg: Option<GeometricCoherenceResult>,
}

/// Evolve a density matrix under rho -> G rho G^dag for t = 0..=t_max.
pub fn run_density(
    cfg: &GroverConfig,
    initial: &DensityMatrix,
    t_max: usize,
    obs: &DensityObservables,
) -> Result<Vec<DensityTrajectoryPoint>, CoreError> {
    let n = cfg.n();
    if initial.dim() != n {
        return Err(CoreError::DimensionMismatch(format!(
            "density matrix has dimension {} but the register has dimension {n}",
            initial.dim()
        )));
    }
    let dense = (n <= DENSE_LIMIT).then(|| iteration_matrix(cfg).expect("within dense limit"));
    let mut rho = initial.matrix().clone();
    let mut points = Vec::with_capacity(t_max + 1);
    let record = |t: usize, mat: &DMatrix<C64>| {
        let state = DensityMatrix::from_matrix_unchecked(mat.clone());
        let p_suc = state.success_probability(&cfg.marked);
        let c1 = relative_entropy_of_coherence(&state);
        let cl1 = l1_coherence(&state);
        let cg = obs
            .with_cg
            .then(|| geometric_coherence_mixed(&state, &obs.cg));
        DensityTrajectoryPoint {
            t,
            state,
            p_suc,
            c1,
            cl1,
            cg,
        }
    };
    points.push(record(0, &rho));
    for t in 1..=t_max {
        rho = match &dense {
            Some(g) => g * &rho * g.adjoint(),
            None => conjugate_matrix_free(cfg, &rho),
        };
        points.push(record(t, &rho));
    }
    Ok(points)
}

/// G rho G^dag without materializing G: apply G to every column, then repeat
/// on the adjoint. O(N^2) total.
fn conjugate_matrix_free(cfg: &GroverConfig, rho: &DMatrix<C64>) -> DMatrix<C64> {
    let n = rho.nrows();
    let mut half = DMatrix::<C64>::zeros(n, n);
    for j in 0..n {
        let mut col = DVector::from_iterator(n, rho.column(j).iter().copied());
        apply_iteration(cfg, &mut col);
        half.set_column(j, &col);
    }
    let adj = half.adjoint();
    let mut out = DMatrix::<C64>::zeros(n, n);
    for j in 0..n {
        let mut col = DVector::from_iterator(n, adj.column(j).iter().copied());
        apply_iteration(cfg, &mut col);
        out.set_column(j, &col);
    }
    out.adjoint()
}
