use thiserror::Error;

/// Everything that can go wrong while evaluating phase integrals, solving
/// for levels, or building reference values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("classically forbidden: E = {energy} lies below the potential at {position}")]
    ClassicallyForbidden { energy: f64, position: f64 },

    #[error("no bound region: {0}")]
    NoBoundRegion(String),

    #[error("quadrature did not converge after {refinements} refinements (estimated error {error:e})")]
    NoConvergence { refinements: u32, error: f64 },

    #[error("root finder did not converge within {iterations} iterations")]
    RootNotConverged { iterations: u32 },

    #[error("could not bracket the level; scanned energies in [{lo}, {hi}]")]
    BracketingFailure { lo: f64, hi: f64 },

    #[error("invalid quantum number: {0}")]
    InvalidQuantumNumber(String),

    #[error("x = {x} is outside the allowed region ({lower}, {upper})")]
    OutsideAllowedRegion { x: f64, lower: f64, upper: f64 },

    #[error("validity metric is singular at x = {x} (classical momentum vanishes)")]
    SingularMetric { x: f64 },

    #[error("no reference formula available: {0}")]
    NoReferenceAvailable(String),
}

impl Error {
    /// Short machine-friendly tag, used when a failed row is embedded in a table.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::ClassicallyForbidden { .. } => "ClassicallyForbidden",
            Error::NoBoundRegion(_) => "NoBoundRegion",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::RootNotConverged { .. } => "NoConvergence",
            Error::BracketingFailure { .. } => "BracketingFailure",
            Error::InvalidQuantumNumber(_) => "InvalidQuantumNumber",
            Error::OutsideAllowedRegion { .. } => "OutsideAllowedRegion",
            Error::SingularMetric { .. } => "SingularMetric",
            Error::NoReferenceAvailable(_) => "NoReferenceAvailable",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
