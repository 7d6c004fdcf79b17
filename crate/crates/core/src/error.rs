use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid law: {0}")]
    InvalidLaw(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("input is not sorted in nondecreasing order")]
    NotSorted,

    #[error("{0} is not an atom of the law")]
    NotAnAtom(f64),

    #[error("reduced laws differ")]
    ReducedLawsDiffer,

    #[error("zero standard deviation in a marginal")]
    ZeroDeviation,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("p has an atom where q has no mass")]
    NotAbsolutelyContinuous,

    #[error("sinkhorn iterations did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("polyline is not closed")]
    OpenCurve,

    #[error("weights are not rational with denominator <= {0}")]
    NotRational(usize),

    #[error("enumeration size {size} exceeds cap {cap}")]
    EnumerationCap { size: usize, cap: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Short variant name, used by the CLI on stderr.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Empty(_) => "Empty",
            Error::NonFinite(_) => "NonFinite",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::InvalidWeights(_) => "InvalidWeights",
            Error::InvalidLaw(_) => "InvalidLaw",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotSorted => "NotSorted",
            Error::NotAnAtom(_) => "NotAnAtom",
            Error::ReducedLawsDiffer => "ReducedLawsDiffer",
            Error::ZeroDeviation => "ZeroDeviation",
            Error::NotSymmetric(_) => "NotSymmetric",
            Error::NotPsd(_) => "NotPsd",
            Error::NotAbsolutelyContinuous => "NotAbsolutelyContinuous",
            Error::NoConvergence(_) => "NoConvergence",
            Error::OpenCurve => "OpenCurve",
            Error::NotRational(_) => "NotRational",
            Error::EnumerationCap { .. } => "EnumerationCap",
            Error::Parse { .. } => "Parse",
        }
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
