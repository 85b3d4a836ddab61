//! Register states (pure and mixed), marked sets, and the information
//! quantities defined directly on them: entropies, relative entropy, fidelity,
//! index of coincidence, success probability.
//!
//! All entropies are in nats. Validation tolerances are fixed at 1e-10 for
//! norms, Hermiticity and traces, and -1e-10 for eigenvalue positivity;
//! quantities derived from eigenvalues treat anything below 1e-12 as zero.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::CoreError;
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, sqrt_psd, xlnx};

/// Norm / trace / Hermiticity validation tolerance.
pub const VALIDATION_TOL: f64 = 1e-10;
/// Eigenvalues below this are treated as exact zeros in entropies and support
/// computations.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Marked set
// ---------------------------------------------------------------------------

/// Subset of computational-basis indices carrying the oracle phase.
///
/// Indices are stored sorted and deduplicated; the set is always nonempty and
/// every index lies below the register dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSet {
    n: usize,
    indices: Vec<usize>,
}

impl MarkedSet {
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self, CoreError> {
        if n < 2 {
            return Err(CoreError::DimensionTooSmall(n));
        }
        let mut idx: Vec<usize> = indices.into_iter().collect();
        if idx.is_empty() {
            return Err(CoreError::EmptyMarkedSet);
        }
        idx.sort_unstable();
        for w in idx.windows(2) {
            if w[0] == w[1] {
                return Err(CoreError::DuplicateMarkedIndex(w[0]));
            }
        }
        if let Some(&last) = idx.last() {
            if last >= n {
                return Err(CoreError::MarkedIndexOutOfRange { index: last, n });
            }
        }
        Ok(Self { n, indices: idx })
    }

    /// First `m` basis indices of an `n`-dimensional register.
    pub fn first(n: usize, m: usize) -> Result<Self, CoreError> {
        Self::new(n, 0..m)
    }

    /// Register dimension N.
    pub fn n_dim(&self) -> usize {
        self.n
    }

    /// Number of marked indices M.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty sets
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, x: usize) -> bool {
        self.indices.binary_search(&x).is_ok()
    }

    /// Unmarked indices, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|x| !self.contains(*x)).collect()
    }

    /// True when M > N/2. The analysis conventions assume the marked set is
    /// at most half the register; callers that care should warn, not fail.
    pub fn exceeds_half(&self) -> bool {
        2 * self.len() > self.n
    }
}

// ---------------------------------------------------------------------------
// Pure states
// ---------------------------------------------------------------------------

/// Normalized state vector of the register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amp: DVector<C64>,
}

impl PureState {
    /// Validates dimension >= 2 and unit norm within 1e-10.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self, CoreError> {
        let n = amplitudes.len();
        if n < 2 {
            return Err(CoreError::DimensionTooSmall(n));
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        let dev = (norm_sq.sqrt() - 1.0).abs();
        if dev > VALIDATION_TOL {
            return Err(CoreError::NotNormalized(dev));
        }
        Ok(Self {
            amp: DVector::from_vec(amplitudes),
        })
    }

    /// Normalizes the given amplitudes (errors only on an all-zero vector).
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self, CoreError> {
        let n = amplitudes.len();
        if n < 2 {
            return Err(CoreError::DimensionTooSmall(n));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 0.0 {
            return Err(CoreError::NotNormalized(1.0));
        }
        Ok(Self {
            amp: DVector::from_vec(amplitudes.into_iter().map(|z| z / norm).collect()),
        })
    }

    pub(crate) fn from_dvector_unchecked(amp: DVector<C64>) -> Self {
        Self { amp }
    }

    /// Uniform superposition over all N basis states.
    pub fn uniform(n: usize) -> Self {
        let a = C64::new(1.0 / (n as f64).sqrt(), 0.0);
        Self {
            amp: DVector::from_element(n, a),
        }
    }

    /// Computational basis state |x>.
    pub fn basis(n: usize, x: usize) -> Self {
        let mut amp = DVector::from_element(n, C64::new(0.0, 0.0));
        amp[x] = C64::new(1.0, 0.0);
        Self { amp }
    }

    /// Uniform superposition over the given index set (marked or complement).
    pub fn uniform_over(n: usize, support: &[usize]) -> Self {
        let a = C64::new(1.0 / (support.len() as f64).sqrt(), 0.0);
        let mut amp = DVector::from_element(n, C64::new(0.0, 0.0));
        for &x in support {
            amp[x] = a;
        }
        Self { amp }
    }

    pub fn dim(&self) -> usize {
        self.amp.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amp
    }

    pub fn amplitude(&self, x: usize) -> C64 {
        self.amp[x]
    }

    /// Basis-measurement distribution |<x|psi>|^2.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amp.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Total probability on the marked set.
    pub fn success_probability(&self, marked: &MarkedSet) -> f64 {
        marked.indices().iter().map(|&x| self.amp[x].norm_sqr()).sum()
    }

    /// Promotion to the rank-one density matrix |psi><psi|.
    pub fn density(&self) -> DensityMatrix {
        let n = self.dim();
        let mut mat = DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                mat[(i, j)] = self.amp[i] * self.amp[j].conj();
            }
        }
        DensityMatrix { mat }
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amp
            .iter()
            .zip(other.amp.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Density matrices
// ---------------------------------------------------------------------------

/// Register density matrix: Hermitian, unit trace, positive semidefinite
/// (all within the 1e-10 validation tolerances).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates shape, Hermiticity, trace and positivity, then stores the
    /// Hermitian part (A + A^dag)/2 so downstream eigendecompositions never
    /// see rounding-level asymmetry.
    pub fn new(mat: DMatrix<C64>) -> Result<Self, CoreError> {
        if mat.nrows() != mat.ncols() {
            return Err(CoreError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let n = mat.nrows();
        if n < 2 {
            return Err(CoreError::DimensionTooSmall(n));
        }
        let mut herm_dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                herm_dev = herm_dev.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if herm_dev > VALIDATION_TOL {
            return Err(CoreError::NotHermitian(herm_dev));
        }
        let trace: C64 = mat.diagonal().iter().sum();
        let trace_dev = (trace - C64::new(1.0, 0.0)).norm();
        if trace_dev > VALIDATION_TOL {
            return Err(CoreError::TraceNotOne(trace_dev));
        }
        let herm = (mat.adjoint() + &mat) * C64::new(0.5, 0.0);
        if let Some(&min) = hermitian_eigenvalues(&herm)
            .first()
        {
            if min < -VALIDATION_TOL {
                return Err(CoreError::NegativeEigenvalue(min));
            }
        }
        Ok(Self { mat: herm })
    }

    pub(crate) fn from_matrix_unchecked(mat: DMatrix<C64>) -> Self {
        Self { mat }
    }

    /// Maximally mixed state I/N.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            mat: DMatrix::from_diagonal_element(n, n, C64::new(1.0 / n as f64, 0.0)),
        }
    }

    /// Diagonal density matrix with the given probabilities.
    pub fn from_diagonal(probs: &[f64]) -> Result<Self, CoreError> {
        let n = probs.len();
        let mut mat = DMatrix::<C64>::zeros(n, n);
        for (i, &p) in probs.iter().enumerate() {
            mat[(i, i)] = C64::new(p, 0.0);
        }
        Self::new(mat)
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    /// Diagonal as a real probability vector; tiny negative rounding residues
    /// are clamped to zero.
    pub fn diagonal_probabilities(&self) -> Vec<f64> {
        self.mat.diagonal().iter().map(|z| z.re.max(0.0)).collect()
    }

    /// Dephased (diagonal) part of the state in the incoherent basis.
    pub fn dephased(&self) -> DensityMatrix {
        let n = self.dim();
        let mut mat = DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            mat[(i, i)] = C64::new(self.mat[(i, i)].re, 0.0);
        }
        Self { mat }
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat)
    }

    /// Purity tr(rho^2), computed as the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Index of coincidence: sum of squared diagonal probabilities.
    pub fn index_of_coincidence(&self) -> f64 {
        self.mat.diagonal().iter().map(|z| z.re * z.re).sum()
    }

    /// Total probability on the marked set.
    pub fn success_probability(&self, marked: &MarkedSet) -> f64 {
        marked.indices().iter().map(|&x| self.mat[(x, x)].re).sum()
    }

    /// von Neumann entropy in nats.
    pub fn von_neumann_entropy(&self) -> f64 {
        -self.eigenvalues().iter().map(|&l| xlnx(l)).sum::<f64>()
    }
}

// ---------------------------------------------------------------------------
// Scalar information quantities
// ---------------------------------------------------------------------------

/// Shannon entropy of a probability vector, in nats, with 0 ln 0 = 0.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| xlnx(p)).sum::<f64>()
}

/// Binary Shannon entropy h(p) in nats.
pub fn binary_entropy(p: f64) -> f64 {
    -xlnx(p) - xlnx(1.0 - p)
}

/// Quantum relative entropy value: finite nonnegative, or the distinguished
/// infinite outcome when the support condition fails. Deliberately not a bare
/// float so callers must branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelEntropy {
    Finite(f64),
    Infinite,
}

impl RelEntropy {
    pub fn is_finite(&self) -> bool {
        matches!(self, RelEntropy::Finite(_))
    }

    /// Finite value, or None for the infinite outcome.
    pub fn finite(&self) -> Option<f64> {
        match self {
            RelEntropy::Finite(v) => Some(*v),
            RelEntropy::Infinite => None,
        }
    }
}

/// Quantum relative entropy S(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma)
/// in nats.
///
/// Support is decided at the 1e-12 eigenvalue floor: every eigenvector of rho
/// with eigenvalue above the floor must lie in the support of sigma (squared
/// projection at least 1 - 1e-9), otherwise the result is
/// [`RelEntropy::Infinite`].
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> RelEntropy {
    assert_eq!(
        rho.dim(),
        sigma.dim(),
        "relative entropy requires equal dimensions"
    );
    let (p, u) = hermitian_eigen(rho.matrix());
    let (q, v) = hermitian_eigen(sigma.matrix());
    let n = rho.dim();

    // Squared overlaps o[i][j] = |<v_j|u_i>|^2.
    let mut overlap = vec![vec![0.0; n]; n];
    for (i, row) in overlap.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let ip: C64 = v
                .column(j)
                .iter()
                .zip(u.column(i).iter())
                .map(|(vj, ui)| vj.conj() * ui)
                .sum();
            *entry = ip.norm_sqr();
        }
    }

    // Support condition.
    for i in 0..n {
        if p[i] > EIGENVALUE_FLOOR {
            let mass: f64 = (0..n)
                .filter(|&j| q[j] > EIGENVALUE_FLOOR)
                .map(|j| overlap[i][j])
                .sum();
            if mass < 1.0 - 1e-9 {
                return RelEntropy::Infinite;
            }
        }
    }

    let tr_rho_ln_rho: f64 = p.iter().map(|&l| xlnx(l)).sum();
    let mut tr_rho_ln_sigma = 0.0;
    for j in 0..n {
        if q[j] > EIGENVALUE_FLOOR {
            let weight: f64 = (0..n)
                .map(|i| p[i].max(0.0) * overlap[i][j])
                .sum();
            tr_rho_ln_sigma += weight * q[j].ln();
        }
    }
    RelEntropy::Finite(tr_rho_ln_rho - tr_rho_ln_sigma)
}

/// Fidelity in the squared convention: F(rho, sigma) = (tr sqrt(sqrt(rho)
/// sigma sqrt(rho)))^2, so F(rho, rho) = 1 and for pure rho = |psi><psi| it
/// reduces to <psi|sigma|psi>.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    assert_eq!(rho.dim(), sigma.dim(), "fidelity requires equal dimensions");
    let a = sqrt_psd(rho.matrix());
    let inner = &a * sigma.matrix() * &a;
    let root_sum: f64 = hermitian_eigenvalues(&inner)
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum();
    root_sum * root_sum
}
