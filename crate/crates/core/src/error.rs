use thiserror::Error;

use crate::measure_space::Domain;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: Domain, right: Domain },

    #[error("invalid interval [{start}, {end}): need 0 <= start < end <= 1")]
    InvalidInterval { start: String, end: String },

    #[error("index {index} is outside a discrete space of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("discrete subset indices must be strictly increasing")]
    UnsortedIndices,

    #[error("point {0} is outside the space")]
    PointOutsideSpace(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("terms {first} and {second} have overlapping sets")]
    OverlappingSets { first: usize, second: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("order operations are undefined for vector values")]
    OrderOnVector,

    #[error("integrand takes negative values")]
    NegativeIntegrand,

    #[error("invalid piecewise-linear function: {0}")]
    InvalidPiecewiseLinear(String),

    #[error("unsupported integrand: {0}")]
    UnsupportedIntegrand(String),

    #[error("term is not an elementary function")]
    NotElementary,

    #[error("materializing level {level} needs {cells} level-set intervals (limit {limit})")]
    LevelSetLimit { level: u32, cells: u64, limit: u64 },

    #[error("series has no summability certificate")]
    MissingCertificate,

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
