use std::fmt;

/// Command-level failure with a stable process exit code:
/// 2 for invalid input or configuration, 3 for a closed-form engine that
/// cannot handle the requested configuration, 1 for I/O problems and for a
/// bounds sweep that found a violated inequality.
#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments or an input that violates a model invariant.
    Usage(String),
    /// The closed-form engine was requested but its assumptions fail.
    ClosedForm(String),
    /// Reading or writing a file failed.
    Io(String),
    /// The sweep finished but at least one bound slack fell below tolerance.
    BoundViolation { min_slack: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::ClosedForm(_) => 3,
            CliError::Io(_) | CliError::BoundViolation { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "invalid input: {msg}"),
            CliError::ClosedForm(msg) => {
                write!(f, "closed-form engine unavailable: {msg}")
            }
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
            CliError::BoundViolation { min_slack } => write!(
                f,
                "bound violated: minimum slack {min_slack:.3e} is below -1e-6"
            ),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
