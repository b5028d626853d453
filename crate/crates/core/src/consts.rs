//! Closed-form constants of the KCBS scenario.
//!
//! All √5-based values are computed from `f64::sqrt` at call time rather than
//! written as decimal literals.

/// Classical (non-contextual) lower bound of the KCBS sum.
pub const CLASSICAL_BOUND: f64 = -3.0;

#[inline]
pub fn sqrt5() -> f64 {
    5.0_f64.sqrt()
}

/// `5 − 4√5`, the smallest eigenvalue of the KCBS operator and the quantum
/// lower limit of the KCBS sum (≈ −3.9443).
#[inline]
pub fn quantum_lower_limit() -> f64 {
    5.0 - 4.0 * sqrt5()
}

/// `2√5 − 5`, the doubly degenerate upper eigenvalue of the KCBS operator
/// (≈ −0.5279).
#[inline]
pub fn kcbs_upper_eigenvalue() -> f64 {
    2.0 * sqrt5() - 5.0
}

/// `−√5`, the smallest KCBS sum reachable by a product (C = 0) state.
#[inline]
pub fn local_bound() -> f64 {
    -sqrt5()
}

/// Slope `5 − 3√5` of the minimal KCBS sum as a function of concurrence.
#[inline]
pub fn s_min_slope() -> f64 {
    5.0 - 3.0 * sqrt5()
}
