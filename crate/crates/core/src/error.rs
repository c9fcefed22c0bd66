use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rank mismatch: quotient of rank {big} by rank {small}")]
    RankMismatch { big: usize, small: usize },
    #[error("sublattice is not contained in the larger lattice")]
    NotContained,
    #[error("root of unity of order {order} does not lie in the field of conductor {conductor}")]
    ConductorMismatch { order: u64, conductor: u64 },
    #[error("NonRational: cyclotomic number is not a rational constant")]
    NonRational,
    #[error("InvalidAutomorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("NoProvenance: a raw lattice needs an explicit alternating form")]
    NoProvenance,
    #[error("Degenerate: averaged alternating form is singular")]
    Degenerate,
    #[error("NotClosedWithinCap: group closure exceeds {cap} elements")]
    NotClosedWithinCap { cap: usize },
    #[error("LatticeNotPreserved: {0}")]
    LatticeNotPreserved(String),
    #[error("EigenvalueMismatch: {0}")]
    EigenvalueMismatch(String),
    #[error("InvalidDatum: {0}")]
    InvalidDatum(String),
    #[error("OddRank: fixed lattice has odd rank {0}")]
    OddRank(usize),
    #[error("DegenerateRestriction: invariant form is singular on the fixed subspace")]
    DegenerateRestriction,
    #[error("NotASubgroup: {0}")]
    NotASubgroup(String),
    #[error("Inconsistent: {0}")]
    Inconsistent(String),
    #[error("DivisibilityViolation: fiber canonical order {fiber} does not divide {total}")]
    DivisibilityViolation { fiber: u64, total: u64 },
    #[error("CapExceeded: {points} points exceed the enumeration cap {cap}")]
    CapExceeded { points: u128, cap: u128 },
    #[error("BadLevel: {0}")]
    BadLevel(String),
    #[error("UnknownEntry: {0}")]
    UnknownEntry(String),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("internal: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Validation,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::UnknownEntry(_) => ErrorClass::Parse,
            Error::NotASubgroup(_) | Error::DivisibilityViolation { .. } | Error::Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Validation,
        }
    }
}
