//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("coefficient and shift lists must have equal length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("all coefficients are zero")]
    AllZeroCoefficients,

    #[error("Schur power exponent must be positive, got {0}")]
    NonPositiveExponent(String),

    #[error("precision too low: {got} digits (need at least {need})")]
    PrecisionTooLow { got: u32, need: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("moment sequence too short: have {have} values, need {need}")]
    InsufficientMoments { have: usize, need: usize },

    #[error("no {r}-atomic representation: {reason}")]
    NoAtomicRepresentation { r: usize, reason: String },

    #[error("analytic decomposition requires analytic degree at most co-analytic degree (t = {t}, s = {s})")]
    NotAnalyticCase { t: u32, s: u32 },

    #[error("co-analytic decomposition requires analytic degree greater than co-analytic degree (t = {t}, s = {s})")]
    NotCoanalyticCase { t: u32, s: u32 },

    #[error("incompatible sum: {0}")]
    IncompatibleSum(String),

    #[error("finite block invariant violated: {0}")]
    BlockInvariant(String),

    #[error("symbol grammar error: {0}")]
    Grammar(String),

    #[error("unknown verification check id: {0}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
