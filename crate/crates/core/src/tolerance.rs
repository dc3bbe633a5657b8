//! Numerical thresholds shared across the crate.
//!
//! All arithmetic is `f64`. The algebra itself is exact, so every threshold
//! here bounds accumulated rounding only.

/// Maximum `|norm - 1|` accepted for a unit quaternion.
pub const TOL_UNIT: f64 = 1e-9;

/// Norms at or below this are treated as zero (degenerate input).
pub const TOL_ZERO: f64 = 1e-12;

/// Relative residual below which Gram–Schmidt declares a vector dependent.
pub const TOL_RANK: f64 = 1e-10;

/// Maximum entry of `M^H M - I` for [`crate::linalg::is_isometry`].
pub const TOL_ISO: f64 = 1e-10;

/// Default tolerance for the Knill–Laflamme conditions.
pub const TOL_KL: f64 = 1e-12;

/// Default comparison tolerance for identities between small exact objects.
pub const TOL_CMP: f64 = 1e-12;

/// Relative comparison `|a - b| <= tol * (1 + scale)`.
#[inline]
pub fn close_rel(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + scale)
}
