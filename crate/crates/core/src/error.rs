use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("form is not positive definite")]
    NotPositiveDefinite,

    #[error("translate index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("generalized minimum is zero (overlapping translates)")]
    DegenerateMinimum,

    #[error("sublattice matrix is singular")]
    SingularSublattice,

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("invalid catalog parameter: {0}")]
    InvalidParameter(String),

    #[error("uncertainty set requested for a form whose target lies outside the Voronoi domain")]
    OutsideVoronoiDomain,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal certificate check failed: {0}")]
    CertificateCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
