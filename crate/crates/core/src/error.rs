use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A site whose `Σ count·e·f` differs from the system degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub site: usize,
    pub label: String,
    pub sum: BigUint,
    pub expected: BigUint,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "site {} ({}): sum of count*e*f is {}, expected {}",
            self.site + 1,
            self.label,
            self.sum,
            self.expected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid spot: {0}")]
    InvalidSpot(String),
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("unit or zero ideal: {0}")]
    UnitOrZero(String),
    #[error("spot mismatch: {0}")]
    SpotMismatch(String),
    #[error("malformed system: {0}")]
    MalformedSystem(String),
    #[error("inconsistent system: {0}")]
    Inconsistent(Violation),
    #[error("broken chain: {0}")]
    BrokenChain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("conflicting supports at sites {}", .0.join(", "))]
    SupportConflict(Vec<String>),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidSpot(_) => "invalid_spot",
            Error::InvalidIdeal(_) => "invalid_ideal",
            Error::UnitOrZero(_) => "unit_or_zero_ideal",
            Error::SpotMismatch(_) => "spot_mismatch",
            Error::MalformedSystem(_) => "malformed_system",
            Error::Inconsistent(_) => "inconsistent_system",
            Error::BrokenChain(_) => "broken_chain",
            Error::Precondition(_) => "precondition",
            Error::SupportConflict(_) => "support_conflict",
            Error::Factorization(_) => "factorization",
            Error::Parse(_) => "parse",
            Error::Verification(_) => "verification",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
