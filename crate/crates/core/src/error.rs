use thiserror::Error;

use crate::fano::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid number of levels {0}: need at least 2")]
    InvalidLevels(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a valid density matrix: {0}")]
    Validation(ValidationReport),

    #[error("Fano tensor is not normalized: d_0..0 = {0}, expected 1")]
    Normalization(f64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("too many qudits for exhaustive classification ({0} > {max}); check explicit partitions instead", max = crate::separability::MAX_CLASSIFY_QUDITS)]
    TooManyQudits(usize),

    #[error("sampling budget of {attempts} attempts exhausted for group {group}")]
    SamplingExhausted { group: usize, attempts: usize },

    #[error("metric is numerically singular at point {point:?}")]
    SingularMetric { point: Vec<f64> },

    #[error("no closed form available for case `{0}`")]
    UnsupportedCase(String),

    #[error("closed-form denominator vanishes ({0:e})")]
    SingularExpression(f64),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid embedding map: {0}")]
    InvalidMap(String),

    #[error("parse error: {0}")]
    Parse(String),
}
