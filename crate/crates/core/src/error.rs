use thiserror::Error;

use crate::quadrature::QuadDiagnostics;

/// Errors produced by the numerics in this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An input was NaN or infinite, or outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A model or profile parameter violates its invariant.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    Validation {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The operation is not defined for the given mirror model.
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: {0}")]
    Quadrature(QuadDiagnostics),

    /// The transfer form of the matching conditions is singular at |lambda| = 1.
    #[error("matching conditions singular at lambda = {lambda}; use robin_dirichlet_residual")]
    SingularParameter { lambda: f64 },

    /// A linear system had a vanishing determinant.
    #[error("singular linear system (|det| = {det_abs:e})")]
    SingularSystem { det_abs: f64 },

    /// Quotient with a vanishing denominator.
    #[error("degenerate ratio: {0}")]
    Degenerate(String),

    /// A minimum search found a sampled profile that is not unimodal.
    #[error("ratio is not unimodal on the search range; samples (mu/omega0, ratio): {samples:?}")]
    NotUnimodal { samples: Vec<(f64, f64)> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {x}")))
    }
}
