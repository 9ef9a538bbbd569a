use thiserror::Error;

pub type Result<T> = std::result::Result<T, DmtError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DmtError {
    /// An argument fell outside the interval on which the operation is defined.
    #[error("{what} = {value} outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// Vector shapes do not match the antenna configuration.
    #[error("shape mismatch: {0}")]
    Contract(String),

    /// Invalid antenna configuration or variant/config combination.
    #[error("configuration error: {0}")]
    Config(String),

    /// The request is valid but the solver declines it (combinatorial size).
    #[error("solver refused: {0}")]
    Refused(String),

    /// A feasible set that should be non-empty came out empty.
    #[error("internal error: {0}")]
    Internal(String),

    /// Non-finite or otherwise unusable input data.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("insufficient data: {usable} usable points, at least {required} required")]
    InsufficientData { usable: usize, required: usize },
}

/// Absolute tolerance used for interval membership and support checks.
pub const EPS: f64 = 1e-9;

pub(crate) fn check_domain(what: &'static str, value: f64, lo: f64, hi: f64) -> Result<f64> {
    if !value.is_finite() || value < lo - EPS || value > hi + EPS {
        return Err(DmtError::Domain { what, value, lo, hi });
    }
    Ok(value.clamp(lo, hi))
}
