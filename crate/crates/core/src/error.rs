use thiserror::Error;

use crate::halfint::HalfInt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("spin must be non-negative, got {0}")]
    NegativeSpin(HalfInt),

    #[error("projection {m} is not valid for spin {s}")]
    InvalidProjection { s: HalfInt, m: HalfInt },

    #[error("spin {s} exceeds the supported limit {limit}")]
    SpinTooLarge { s: HalfInt, limit: HalfInt },

    #[error("rotation axis must be unit length (|n| = {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("expected {expected} amplitudes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("spin mismatch: {left} vs {right}")]
    SpinMismatch { left: HalfInt, right: HalfInt },

    #[error("angle {0} lies outside (-pi, pi]")]
    AngleOutOfRange(f64),

    #[error("C_LL is undefined: w(parallel) + w(antiparallel) vanishes at phi = {phi}")]
    UndefinedAsymmetry { phi: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("scale factor a = {0} rejected: only a(t_now) = 1 (critical universe) is supported, a k != 0 universe has no such normalization")]
    UnsupportedScaleFactor(f64),

    #[error("pair ({ma}, {mb}) cannot be exchanged by a single pi rotation")]
    NotExchangeable { ma: HalfInt, mb: HalfInt },

    #[error("failed to parse {what} from `{input}`")]
    Parse { what: &'static str, input: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
