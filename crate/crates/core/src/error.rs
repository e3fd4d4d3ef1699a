use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown divisor or label `{0}`")]
    UnknownDivisor(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("lattice fails validation: {0}")]
    InvalidLattice(String),
    #[error("class {0} is not pseudoeffective")]
    NotPseudoeffective(String),
    #[error("class {0} is not ample")]
    NotAmple(String),
    #[error("direction class is zero")]
    ZeroDirection,
    #[error("direction class {0} is not pseudoeffective")]
    DirectionNotEffective(String),
    #[error("Gram matrix of curves {{{0}}} is not negative definite")]
    GramNotNegativeDefinite(String),
    #[error("iteration did not terminate after {0} steps")]
    NonTermination(usize),
    #[error("certificate check failed: {0}")]
    CertificateFailed(String),
    #[error("ray never leaves the pseudoeffective cone (cone is not pointed)")]
    UnboundedRay,
    #[error("chamber walk disagrees with a direct decomposition at lambda = {0}")]
    CrossCheckFailed(String),
    #[error("invalid valuation set: {0}")]
    InvalidSigma(String),
    #[error("rationality classification unavailable: {0}")]
    ClassificationUnavailable(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("coefficients must be nonnegative")]
    NegativeCoefficients,
    #[error("inconsistent vanishing orders: w(b_Z) = {vb_z} exceeds w(b_S) = {vb_s}")]
    InconsistentVanishing { vb_z: String, vb_s: String },
    #[error("invalid curve data: {0}")]
    InvalidCurveData(String),
    #[error("lambda = {0} lies outside the family's range")]
    OutOfRange(String),
}

impl Error {
    /// Stable numeric code used in structured `E<code>: <message>` lines.
    pub fn code(&self) -> u32 {
        match self {
            Error::Scalar(e) => match e {
                ScalarError::MixedFields { .. } => 101,
                ScalarError::DivisionByZero => 102,
                ScalarError::DegenerateEquation => 103,
                ScalarError::NestedExtension { .. } => 104,
                ScalarError::NegativeSqrt(_) => 105,
                ScalarError::Parse { .. } => 106,
            },
            Error::DimensionMismatch { .. } => 201,
            Error::UnknownDivisor(_) => 202,
            Error::DuplicateLabel(_) => 203,
            Error::InvalidLattice(_) => 204,
            Error::NotPseudoeffective(_) => 301,
            Error::NotAmple(_) => 302,
            Error::ZeroDirection => 303,
            Error::DirectionNotEffective(_) => 304,
            Error::GramNotNegativeDefinite(_) => 305,
            Error::NonTermination(_) => 306,
            Error::CertificateFailed(_) => 307,
            Error::UnboundedRay => 308,
            Error::CrossCheckFailed(_) => 309,
            Error::OutOfRange(_) => 310,
            Error::InvalidSigma(_) => 401,
            Error::ClassificationUnavailable(_) => 402,
            Error::HypothesisViolated(_) => 501,
            Error::NegativeCoefficients => 502,
            Error::InconsistentVanishing { .. } => 503,
            Error::InvalidCurveData(_) => 601,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
