use thiserror::Error;

/// Validation and construction errors for register states, marked sets and
/// iteration configurations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("register dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("state vector norm deviates from 1 by {0:.3e} (tolerance 1e-10)")]
    NotNormalized(f64),
    #[error("marked set must be nonempty")]
    EmptyMarkedSet,
    #[error("marked index {index} out of range for dimension {n}")]
    MarkedIndexOutOfRange { index: usize, n: usize },
    #[error("marked index {0} listed more than once")]
    DuplicateMarkedIndex(usize),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix deviates from Hermitian by {0:.3e} (tolerance 1e-10)")]
    NotHermitian(f64),
    #[error("trace deviates from 1 by {0:.3e} (tolerance 1e-10)")]
    TraceNotOne(f64),
    #[error("matrix has eigenvalue {0:.3e} below the -1e-10 positivity tolerance")]
    NegativeEigenvalue(f64),
    #[error("probability vector entry {value:.3e} at index {index} is negative")]
    NegativeProbability { index: usize, value: f64 },
    #[error("probability vector sum deviates from 1 by {0:.3e} (tolerance 1e-10)")]
    ProbabilitySumNotOne(f64),
    #[error("dense iteration matrix is only materialized for dimensions up to 4096, got {0}")]
    TooLargeForDense(usize),
    #[error("scenario parameter out of range: {0}")]
    ScenarioParameter(String),
}
