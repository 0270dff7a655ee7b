//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by series, product, bound and solver operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter lies outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coefficient window does not fit on the requested boundary grid.
    #[error("coefficient window [{k_min}, {k_max}] does not fit a grid of size {size}")]
    WindowExceedsGrid { k_min: i64, k_max: i64, size: usize },

    /// The adaptive grid sizing rule asked for more samples than the cap
    /// allows; zeros or poles are too close to the unit circle for the
    /// requested tolerance.
    #[error("required boundary grid of {required} samples exceeds the cap {cap}")]
    GridCapExceeded { required: usize, cap: usize },

    /// Evaluation was requested at (or too close to) a pole.
    #[error("evaluation at a pole (|denominator| = {denom_modulus:.3e})")]
    EvaluationAtPole { denom_modulus: f64 },

    /// A zero or pole sits on the unit circle within tolerance, so the
    /// winding number is undefined.
    #[error("root of modulus {modulus} is indistinguishable from the unit circle")]
    RootNearCircle { modulus: f64 },

    /// Polynomial root finding failed to reach its backward-error target.
    #[error("polynomial root finding did not converge (degree {degree})")]
    RootsDiverged { degree: usize },

    /// The recovered numerator has significant coefficients beyond the
    /// allowed degree, signalling numerical breakdown.
    #[error("numerator degree certification failed: residual {residual:.3e} at degree {degree}")]
    DegreeCertification { residual: f64, degree: usize },

    /// The two Parseval forms of the criterion disagree beyond tolerance.
    #[error("criterion Parseval forms disagree: {minus_form} vs {complement_form}")]
    ParsevalMismatch { minus_form: f64, complement_form: f64 },

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
