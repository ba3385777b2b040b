use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("surface (g={g}, n={n}) is not stable: 2g-2+n > 0 is required")]
    UnstableSurface { g: u32, n: u32 },

    #[error("n={n} marked points exceeds the supported limit of {limit}")]
    MarkedPointLimit { n: u32, limit: u32 },

    #[error("half index (i={genus}, I={labels}) on (g={g}, n={n}) is invalid: {reason}")]
    InvalidHalf {
        genus: u32,
        labels: String,
        g: u32,
        n: u32,
        reason: &'static str,
    },

    #[error(
        "surface mismatch: expected (g={expected_g}, n={expected_n}), \
         found (g={found_g}, n={found_n})"
    )]
    SurfaceMismatch {
        expected_g: u32,
        expected_n: u32,
        found_g: u32,
        found_n: u32,
    },

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid test curve: {0}")]
    InvalidCurve(String),

    #[error("genus 0 is unsupported for {0}; g >= 1 is required")]
    GenusZeroUnsupported(&'static str),

    #[error("empty column selection")]
    EmptySelection,

    #[error("duplicate column in selection: {0}")]
    DuplicateColumn(String),

    #[error("column is not part of the basis: {0}")]
    UnknownColumn(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid fiber configuration: {0}")]
    InvalidConfiguration(String),

    #[error("quadratic-form hypotheses failed: {0}")]
    HypothesesFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
