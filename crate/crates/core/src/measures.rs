//! Concurrence and KCBS expectation values of MSR states.
//!
//! The KCBS expectation `S` is available in four algebraically equivalent
//! forms: the matrix element `⟨ψ|K|ψ⟩`, the closed form in `θ₁, θ₂, Δφ`, the
//! rational form with everything over `f + 3`, and the form written through
//! the concurrence. They are kept separate on purpose so they can be checked
//! against each other.

use serde::Serialize;

use crate::consts::{kcbs_upper_eigenvalue, quantum_lower_limit, sqrt5};
use crate::error::{Error, Result};
use crate::kcbs::KcbsOperator;
use crate::msr::{MsrPair, Qutrit};

/// Slack on the `[−1, 1]` feasibility test for `cos Δφ`.
pub const COS_DELTA_PHI_SLACK: f64 = 1e-12;

/// Below this `|sin θ₁ sin θ₂|`, Δφ has no effect on the state.
pub const DEGENERATE_SIN_PRODUCT: f64 = 1e-12;

const IMAGINARY_RESIDUE: f64 = 1e-12;
const RANGE_SLACK: f64 = 1e-12;

/// Entanglement of a pure two-qubit state, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Concurrence(f64);

impl Concurrence {
    pub fn new(value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidConcurrence(value));
        }
        Ok(Self(value))
    }

    /// Clamps rounding excursions of a value that is in range mathematically.
    fn from_formula(value: f64) -> Self {
        debug_assert!((-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&value), "{value}");
        Self(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Expectation value of the KCBS operator.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SValue(f64);

impl SValue {
    pub fn new(value: f64) -> Self {
        Self(value)
    }

    /// Value produced by one of the closed forms. These are bounded by the
    /// KCBS spectrum by construction, so an excursion is a bug.
    pub(crate) fn from_formula(value: f64) -> Self {
        debug_assert!(
            value >= quantum_lower_limit() - RANGE_SLACK
                && value <= kcbs_upper_eigenvalue() + RANGE_SLACK,
            "S = {value} outside the KCBS spectrum"
        );
        Self(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `⟨ψ|K|ψ⟩` for a normalized state.
pub fn expectation_general(state: &Qutrit, op: &KcbsOperator) -> Result<SValue> {
    state.ensure_normalized()?;
    let value = op.raw_expectation(state);
    debug_assert!(
        value.im.abs() < IMAGINARY_RESIDUE,
        "imaginary residue {} in a Hermitian expectation",
        value.im
    );
    Ok(SValue::new(value.re))
}

/// `4(3√5−5)(cos θ₁ cos θ₂ + 1)/(f + 3) + 5 − 4√5`.
pub fn s_closed_form(pair: &MsrPair) -> SValue {
    let r5 = sqrt5();
    let y = pair.cos_product();
    let f = pair.sin_product_term() + y;
    SValue::from_formula(4.0 * (3.0 * r5 - 5.0) * (y + 1.0) / (f + 3.0) + quantum_lower_limit())
}

/// `[(5−4√5)X + (8√5−15)Y − 5] / (X + Y + 3)` with `X = sin θ₁ sin θ₂ cos Δφ`
/// and `Y = cos θ₁ cos θ₂`.
pub fn s_rational_form(pair: &MsrPair) -> SValue {
    let r5 = sqrt5();
    let x = pair.sin_product_term();
    let y = pair.cos_product();
    SValue::from_formula(
        ((5.0 - 4.0 * r5) * x + (8.0 * r5 - 15.0) * y - 5.0) / (x + y + 3.0),
    )
}

/// `(3√5−5)(C + 1)(cos θ₁ cos θ₂ + 1) + 5 − 4√5`.
pub fn s_via_concurrence(pair: &MsrPair) -> SValue {
    let c = concurrence_msr(pair).value();
    SValue::from_formula(
        (3.0 * sqrt5() - 5.0) * (c + 1.0) * (pair.cos_product() + 1.0) + quantum_lower_limit(),
    )
}

/// `(1 − f)/(3 + f)`.
pub fn concurrence_msr(pair: &MsrPair) -> Concurrence {
    let f = pair.sin_product_term() + pair.cos_product();
    Concurrence::from_formula((1.0 - f) / (3.0 + f))
}

/// Concurrence `2|α₁α₂ − β²/2|` of `α₁|+1⟩ + β|0⟩ + α₂|−1⟩`.
///
/// `β` multiplies the normalized symmetric ket `(|01⟩ + |10⟩)/√2`, so each of
/// `|01⟩, |10⟩` carries `β/√2`, and the two-qubit formula `2|ad − bc|` yields
/// the `β²/2` term.
pub fn concurrence_symmetric(state: &Qutrit) -> Result<Concurrence> {
    state.ensure_normalized()?;
    let c = 2.0 * (state.plus1() * state.minus1() - state.zero() * state.zero() * 0.5).norm();
    Ok(Concurrence::from_formula(c))
}

fn check_concurrence(c: f64) -> Result<f64> {
    Concurrence::new(c).map(Concurrence::value)
}

/// Inverse of `f ↦ (1 − f)/(3 + f)`: `f = (1 − 3C)/(1 + C)`.
pub fn f_from_concurrence(c: f64) -> Result<f64> {
    let c = check_concurrence(c)?;
    Ok((1.0 - 3.0 * c) / (1.0 + c))
}

/// `cos Δφ` that gives concurrence `c` at polar angles `θ₁, θ₂`.
///
/// Values within [`COS_DELTA_PHI_SLACK`] of `±1` are clamped onto the
/// interval; anything further out is [`Error::Infeasible`].
pub fn delta_phi_for_constant_c(theta1: f64, theta2: f64, c: f64) -> Result<f64> {
    let target = f_from_concurrence(c)?;
    let sin_product = theta1.sin() * theta2.sin();
    if sin_product.abs() < DEGENERATE_SIN_PRODUCT {
        return Err(Error::DegenerateAngles);
    }
    let cos_dphi = (target - theta1.cos() * theta2.cos()) / sin_product;
    if cos_dphi.abs() > 1.0 + COS_DELTA_PHI_SLACK || cos_dphi.is_nan() {
        return Err(Error::Infeasible {
            concurrence: c,
            cos_delta_phi: cos_dphi,
        });
    }
    Ok(cos_dphi.clamp(-1.0, 1.0))
}
