//! Symmetric two-qubit states in the Majorana stellar representation.
//!
//! A spin-1 state is fixed (up to phase) by two points on the Bloch sphere.
//! Each point is a qubit `|m⟩ = (cos θ/2, sin θ/2 · e^{iφ})`; the symmetrized
//! product `|m⟩|n⟩ + |n⟩|m⟩` is the effective qutrit. Amplitudes are ordered
//! `(m = +1, 0, −1)` everywhere in the crate.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on `|ψ|² = 1` for states handed to the measures.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Polar and azimuthal angle of one Majorana star.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    /// θ must lie in `[0, π]`; φ is wrapped into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        Self::named(theta, phi, "theta", "phi")
    }

    pub(crate) fn named(
        theta: f64,
        phi: f64,
        theta_name: &'static str,
        phi_name: &'static str,
    ) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite { name: theta_name });
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite { name: phi_name });
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::ThetaOutOfRange {
                name: theta_name,
                value: theta,
            });
        }
        Ok(Self {
            theta,
            phi: wrap_phase(phi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Spinor `(cos θ/2, sin θ/2 · e^{iφ})`.
    pub fn ket(&self) -> [Complex64; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }
}

fn wrap_phase(phi: f64) -> f64 {
    let wrapped = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

/// The two Majorana stars of a symmetric two-qubit state. The order of the
/// stars carries no physical meaning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MsrPair {
    pub star1: BlochAngles,
    pub star2: BlochAngles,
}

impl MsrPair {
    pub fn new(star1: BlochAngles, star2: BlochAngles) -> Self {
        Self { star1, star2 }
    }

    /// Builds a pair from raw angles, naming the offending argument on error.
    pub fn from_angles(theta1: f64, phi1: f64, theta2: f64, phi2: f64) -> Result<Self> {
        Ok(Self {
            star1: BlochAngles::named(theta1, phi1, "theta1", "phi1")?,
            star2: BlochAngles::named(theta2, phi2, "theta2", "phi2")?,
        })
    }

    /// Pair with `φ₁ = Δφ` and `φ₂ = 0`.
    pub fn from_delta_phi(theta1: f64, theta2: f64, delta_phi: f64) -> Result<Self> {
        Self::from_angles(theta1, delta_phi, theta2, 0.0)
    }

    pub fn swapped(&self) -> Self {
        Self {
            star1: self.star2,
            star2: self.star1,
        }
    }

    /// `φ₁ − φ₂`, reduced to `[0, 2π)`.
    pub fn delta_phi(&self) -> f64 {
        wrap_phase(self.star1.phi - self.star2.phi)
    }

    /// `cos θ₁ cos θ₂`.
    pub(crate) fn cos_product(&self) -> f64 {
        self.star1.theta.cos() * self.star2.theta.cos()
    }

    /// `sin θ₁ sin θ₂ cos Δφ`.
    pub(crate) fn sin_product_term(&self) -> f64 {
        self.star1.theta.sin() * self.star2.theta.sin() * (self.star1.phi - self.star2.phi).cos()
    }

    /// Overlap geometry `f = sin θ₁ sin θ₂ cos Δφ + cos θ₁ cos θ₂`, the cosine
    /// of the angle between the two Bloch vectors.
    pub fn f_value(&self) -> f64 {
        (self.sin_product_term() + self.cos_product()).clamp(-1.0, 1.0)
    }

    /// `θ_mn` with `cos 2θ_mn = f`.
    pub fn overlap_angle(&self) -> f64 {
        0.5 * self.f_value().acos()
    }

    pub fn norm_constant(&self) -> NormConstant {
        NormConstant {
            n_squared: (self.f_value() + 3.0) / 4.0,
        }
    }

    /// Spin-1 amplitudes of the symmetrized state.
    pub fn to_qutrit(&self) -> Qutrit {
        let [c1, s1] = self.star1.ket();
        let [c2, s2] = self.star2.ket();
        let norm = self.norm_constant().value();
        Qutrit {
            amplitudes: [
                c1 * c2 / norm,
                (s1 * c2 + c1 * s2) * FRAC_1_SQRT_2 / norm,
                s1 * s2 / norm,
            ],
        }
    }
}

/// Normalization of the MSR amplitude vector, `N² = (f + 3)/4 ∈ [1/2, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormConstant {
    n_squared: f64,
}

impl NormConstant {
    pub fn n_squared(&self) -> f64 {
        self.n_squared
    }

    pub fn value(&self) -> f64 {
        self.n_squared.sqrt()
    }
}

/// Amplitudes `(α₁, β, α₂)` on the spin-1 basis `(|+1⟩, |0⟩, |−1⟩)`.
///
/// Construction does not enforce normalization; the measures that need a
/// unit vector check it themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qutrit {
    pub amplitudes: [Complex64; 3],
}

impl Qutrit {
    pub fn new(plus1: Complex64, zero: Complex64, minus1: Complex64) -> Self {
        Self {
            amplitudes: [plus1, zero, minus1],
        }
    }

    pub fn from_real(plus1: f64, zero: f64, minus1: f64) -> Self {
        Self::new(plus1.into(), zero.into(), minus1.into())
    }

    pub fn plus1(&self) -> Complex64 {
        self.amplitudes[0]
    }

    pub fn zero(&self) -> Complex64 {
        self.amplitudes[1]
    }

    pub fn minus1(&self) -> Complex64 {
        self.amplitudes[2]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> [f64; 3] {
        self.amplitudes.map(|a| a.norm_sqr())
    }

    pub(crate) fn ensure_normalized(&self) -> Result<()> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE || !norm_sqr.is_finite() {
            return Err(Error::InvalidState { norm_sqr });
        }
        Ok(())
    }
}
