//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by field construction, analysis, and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid side must be at least 4, got n = {0}")]
    GridTooSmall(usize),

    #[error("values do not form an n x n matrix: expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("side length must be positive and finite, got {0}")]
    BadSideLength(f64),

    #[error("field mean must be zero for s = {s} (|mean| = {mean:e} exceeds tolerance {tol:e})")]
    MeanNotZero { mean: f64, s: f64, tol: f64 },

    #[error("averaging radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("radii must be positive and strictly increasing")]
    UnsortedRadii,

    #[error("profile contains no radii")]
    EmptyProfile,

    #[error("kappa must lie strictly inside (0, 1), got {0}")]
    KappaOutOfRange(f64),

    #[error("dimension d = {d} outside supported range {min}..={max}")]
    DimensionOutOfRange { d: u32, min: u32, max: u32 },

    #[error("disk radius must lie in (0, 1/2), got {0}")]
    EpsilonOutOfRange(f64),

    #[error("mode must satisfy 1 <= m < n/2, got m = {m} with n = {n}")]
    ModeOutOfRange { m: u32, n: usize },

    #[error("spectral decay exponent must be nonnegative, got {0}")]
    NegativeDecay(f64),

    #[error("sub-radius delta = {delta} must satisfy 0 < delta <= kappa*r/12 = {max} and delta < r")]
    BadCrippaRadius { delta: f64, max: f64 },

    #[error("protocol parameter {name} must be positive, got {value}")]
    BadProtocol { name: &'static str, value: f64 },

    #[error("operands disagree: {0}")]
    Mismatch(String),

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("unparsable value on data line {line}")]
    MalformedValue { line: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
