//! KCBS observables on a spin-1 system.
//!
//! The five measurements are `A(v) = 2 (v·S)² − I` along directions `v_j` of a
//! pentagram frame, where neighbouring directions are orthogonal so that
//! `A(v_j)` and `A(v_{j+1})` commute. The KCBS operator is `Σ_j A_j A_{j+1}`.
//! With the frame's symmetry axis along z it is diagonal in the `S_z` basis.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::consts::{kcbs_upper_eigenvalue, quantum_lower_limit};
use crate::error::{Error, Result};
use crate::msr::Qutrit;

/// Allowed deviation from `|v| = 1` for measurement directions.
pub const DIRECTION_TOLERANCE: f64 = 1e-9;

/// Largest `|v_j · v_{j+1}|` accepted when assembling the KCBS operator.
pub const FRAME_ORTHOGONALITY_TOLERANCE: f64 = 1e-6;

pub type CMatrix3 = Matrix3<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// 3×3 complex matrix acting on `(|+1⟩, |0⟩, |−1⟩)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spin1Matrix(pub CMatrix3);

impl Spin1Matrix {
    pub fn s_x() -> Self {
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self(Matrix3::new(ZERO, r, ZERO, r, ZERO, r, ZERO, r, ZERO))
    }

    pub fn s_y() -> Self {
        let i = Complex64::new(0.0, FRAC_1_SQRT_2);
        Self(Matrix3::new(ZERO, -i, ZERO, i, ZERO, -i, ZERO, i, ZERO))
    }

    pub fn s_z() -> Self {
        Self(Matrix3::from_diagonal(&Vector3::new(ONE, ZERO, -ONE)))
    }

    /// `n·S` for a unit direction `n`.
    pub fn along(direction: &Vector3<f64>) -> Result<Self> {
        check_unit(direction)?;
        let [x, y, z] = [direction.x, direction.y, direction.z].map(|c| Complex64::new(c, 0.0));
        Ok(Self(
            Self::s_x().0 * x + Self::s_y().0 * y + Self::s_z().0 * z,
        ))
    }

    pub fn matrix(&self) -> &CMatrix3 {
        &self.0
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        max_abs_entry(&(self.0 - self.0.adjoint())) <= tol
    }

    /// Eigenvalues in ascending order. Only meaningful for Hermitian input.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let ev = self.0.symmetric_eigenvalues();
        let mut out = [ev[0], ev[1], ev[2]];
        out.sort_by(f64::total_cmp);
        out
    }
}

fn check_unit(direction: &Vector3<f64>) -> Result<()> {
    let norm = direction.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > DIRECTION_TOLERANCE {
        return Err(Error::InvalidDirection { norm });
    }
    Ok(())
}

pub(crate) fn max_abs_entry(m: &CMatrix3) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `n·S` along a unit direction.
pub fn spin1_along(direction: &Vector3<f64>) -> Result<Spin1Matrix> {
    Spin1Matrix::along(direction)
}

/// The dichotomic observable `2 (n·S)² − I`, eigenvalues `{+1, +1, −1}`.
pub fn a_observable(direction: &Vector3<f64>) -> Result<Spin1Matrix> {
    let s = Spin1Matrix::along(direction)?.0;
    Ok(Spin1Matrix(s * s * Complex64::new(2.0, 0.0) - CMatrix3::identity()))
}

/// Five real directions with `v_j ⟂ v_{j+1 mod 5}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentagramFrame {
    pub vectors: [Vector3<f64>; 5],
}

impl PentagramFrame {
    /// Regular pentagram about the z axis: azimuth `4πj/5`, common polar
    /// angle Θ with `cos²Θ = cos(π/5) / (1 + cos(π/5))`. The azimuthal step
    /// of 4π/5 is what makes neighbours orthogonal.
    pub fn canonical() -> Self {
        let c = (PI / 5.0).cos();
        let cos_theta = (c / (1.0 + c)).sqrt();
        let sin_theta = (1.0 / (1.0 + c)).sqrt();
        let vectors = std::array::from_fn(|j| {
            let azimuth = 4.0 * PI * j as f64 / 5.0;
            Vector3::new(
                sin_theta * azimuth.cos(),
                sin_theta * azimuth.sin(),
                cos_theta,
            )
        });
        Self { vectors }
    }

    pub fn from_vectors(vectors: [Vector3<f64>; 5]) -> Self {
        Self { vectors }
    }

    /// Rotates every vector about z by `angle`.
    pub fn rotated_about_z(&self, angle: f64) -> Self {
        let rot = nalgebra::Rotation3::from_axis_angle(&Vector3::z_axis(), angle);
        Self {
            vectors: self.vectors.map(|v| rot * v),
        }
    }

    /// Largest `|v_j · v_{j+1}|` over the five cyclic neighbours, with the
    /// index of the first offending vector.
    pub fn max_orthogonality_defect(&self) -> (usize, f64) {
        (0..5)
            .map(|j| (j, self.vectors[j].dot(&self.vectors[(j + 1) % 5]).abs()))
            .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    pub fn max_norm_defect(&self) -> f64 {
        self.vectors
            .iter()
            .map(|v| (v.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Canonical frame, see [`PentagramFrame::canonical`].
pub fn pentagram_vectors() -> PentagramFrame {
    PentagramFrame::canonical()
}

/// The Hermitian operator `Σ_j A_j A_{j+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KcbsOperator(pub CMatrix3);

impl KcbsOperator {
    /// Closed form `diag(2√5−5, 5−4√5, 2√5−5)`.
    pub fn diagonal() -> Self {
        let edge = Complex64::new(kcbs_upper_eigenvalue(), 0.0);
        let middle = Complex64::new(quantum_lower_limit(), 0.0);
        Self(Matrix3::from_diagonal(&Vector3::new(edge, middle, edge)))
    }

    /// Builds the operator from five measurement directions.
    pub fn from_frame(frame: &PentagramFrame) -> Result<Self> {
        let (j, dot) = frame.max_orthogonality_defect();
        if dot > FRAME_ORTHOGONALITY_TOLERANCE {
            return Err(Error::IncompatibleFrame {
                first: j,
                second: (j + 1) % 5,
                dot,
            });
        }
        let observables = frame
            .vectors
            .iter()
            .map(a_observable)
            .collect::<Result<Vec<_>>>()?;
        let sum = (0..5).fold(CMatrix3::zeros(), |acc, j| {
            acc + observables[j].0 * observables[(j + 1) % 5].0
        });
        Ok(Self(sum))
    }

    pub fn matrix(&self) -> &CMatrix3 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn max_entry_difference(&self, other: &KcbsOperator) -> f64 {
        max_abs_entry(&(self.0 - other.0))
    }

    /// `⟨ψ|K|ψ⟩` without normalization checks; the imaginary part is returned
    /// alongside so callers can bound it.
    pub(crate) fn raw_expectation(&self, state: &Qutrit) -> Complex64 {
        let psi = Vector3::from(state.amplitudes);
        psi.dotc(&(self.0 * psi))
    }
}

/// `Σ A_j A_{j+1}` for the canonical frame.
pub fn kcbs_operator_from_frame(frame: &PentagramFrame) -> Result<KcbsOperator> {
    KcbsOperator::from_frame(frame)
}

pub fn kcbs_operator_diagonal() -> KcbsOperator {
    KcbsOperator::diagonal()
}

/// Outcome statistics of the KCBS sum over all deterministic ±1 assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalEnumeration {
    pub minimum: i32,
    pub maximum: i32,
    pub minimizers: usize,
    pub assignments: usize,
}

/// Exhausts the 2⁵ noncontextual assignments `x ∈ {−1, +1}⁵` of the cyclic
/// sum `Σ x_j x_{j+1}`.
pub fn enumerate_classical() -> ClassicalEnumeration {
    let sums: Vec<i32> = (0u32..32)
        .map(|bits| {
            let x: [i32; 5] = std::array::from_fn(|j| if bits >> j & 1 == 1 { 1 } else { -1 });
            (0..5).map(|j| x[j] * x[(j + 1) % 5]).sum()
        })
        .collect();
    let minimum = *sums.iter().min().expect("32 assignments");
    let maximum = *sums.iter().max().expect("32 assignments");
    ClassicalEnumeration {
        minimum,
        maximum,
        minimizers: sums.iter().filter(|&&s| s == minimum).count(),
        assignments: sums.len(),
    }
}

/// Noncontextual lower bound of the KCBS sum.
pub fn classical_bound() -> i32 {
    enumerate_classical().minimum
}
