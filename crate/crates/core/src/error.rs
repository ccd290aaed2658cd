use thiserror::Error;

/// Every failure the numerical routines and the harness can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("t = {t} is outside the unit interval [0, 1)")]
    TNotInUnitInterval { t: f64 },

    #[error("truncation tail could not be bounded after {terms} terms")]
    TailNotBounded { terms: u64 },

    #[error("no Euler sum: {reason}")]
    NoEulerSum { reason: String },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("x = {x} coincides with an interval endpoint")]
    BoundaryAmbiguous { x: f64 },

    #[error(
        "quadrature did not converge after {refinements} refinements (last change {last_change:e})"
    )]
    QuadratureNotConverged {
        refinements: usize,
        last_change: f64,
    },

    #[error("test function does not vanish at the well walls (|g(0)| + |g(pi)| = {boundary:e})")]
    TestFunctionBoundary { boundary: f64 },

    #[error(
        "integration window [-{half_width}, {half_width}] truncates a non-negligible integrand"
    )]
    TruncationInsufficient { half_width: f64 },

    #[error("oscillator level n = {n} exceeds the supported maximum {max}")]
    NOverflow { n: usize, max: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable variant name used in CLI summaries and result files.
    pub fn name(&self) -> &'static str {
        match self {
            Error::TNotInUnitInterval { .. } => "TNotInUnitInterval",
            Error::TailNotBounded { .. } => "TailNotBounded",
            Error::NoEulerSum { .. } => "NoEulerSum",
            Error::DomainError(_) => "DomainError",
            Error::BoundaryAmbiguous { .. } => "BoundaryAmbiguous",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::TestFunctionBoundary { .. } => "TestFunctionBoundary",
            Error::TruncationInsufficient { .. } => "TruncationInsufficient",
            Error::NOverflow { .. } => "NOverflow",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks `0 <= t < 1`.
pub(crate) fn check_unit_interval(t: f64) -> Result<()> {
    if (0.0..1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::TNotInUnitInterval { t })
    }
}
