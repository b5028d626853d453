//! Extremal KCBS values at fixed concurrence.
//!
//! At fixed `C` the overlap `f = (1 − 3C)/(1 + C)` is fixed and `S` only
//! depends on `cos θ₁ cos θ₂`. Writing `a = θ₁ − θ₂`, `b = θ₁ + θ₂`, the
//! reachable overlaps are `cos b ≤ f ≤ cos a`, which puts the minimum at
//! `b = π, cos a = f` and the maximum at `a = 0, cos b = f`:
//!
//! * `S_min(C) = (5 − 3√5) C − √5`
//! * `S_max(C) = 2√5 − 5` for every `C`.
//!
//! [`numeric_extremal_search`] recovers both by brute force over the feasible
//! set without using either formula.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::consts::{kcbs_upper_eigenvalue, local_bound, s_min_slope, sqrt5, CLASSICAL_BOUND};
use crate::error::{Error, Result};
use crate::measures::{
    concurrence_msr, delta_phi_for_constant_c, f_from_concurrence, s_closed_form, Concurrence,
    SValue, COS_DELTA_PHI_SLACK,
};
use crate::msr::MsrPair;

pub const DEFAULT_GRID: usize = 128;
pub const DEFAULT_REFINE_ITERS: usize = 8;
const SHRINK: f64 = 0.25;
const BETA_SLACK: f64 = 1e-12;
const WITNESS_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Minimize,
    Maximize,
}

impl Objective {
    fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Objective::Minimize => candidate < incumbent,
            Objective::Maximize => candidate > incumbent,
        }
    }
}

fn concurrence(c: f64) -> Result<f64> {
    Concurrence::new(c).map(Concurrence::value)
}

/// `(5 − 3√5) C − √5`.
pub fn s_min_for_concurrence(c: f64) -> Result<SValue> {
    let c = concurrence(c)?;
    Ok(SValue::from_formula(s_min_slope() * c + local_bound()))
}

/// `2√5 − 5` independent of `C`. This is the value quoted as −0.53 in the
/// literature, unrounded.
pub fn s_max_for_concurrence(c: f64) -> Result<SValue> {
    concurrence(c)?;
    Ok(SValue::from_formula(kcbs_upper_eigenvalue()))
}

/// `arccos((1 − 3C)/(1 + C))`, the fixed value of `|θ₁ − θ₂|` (minimum) or
/// `θ₁ + θ₂` (maximum) on the extremal set.
fn overlap_arc(c: f64) -> Result<f64> {
    Ok(f_from_concurrence(c)?.clamp(-1.0, 1.0).acos())
}

/// The two stationary `θ₂` of the minimal branch, `½(π ± arccos f)`.
pub fn extremal_theta_min(c: f64) -> Result<[f64; 2]> {
    let arc = overlap_arc(c)?;
    Ok([0.5 * (PI + arc), 0.5 * (PI - arc)])
}

/// The two stationary `θ₂` of the maximal branch, `±½ arccos f`. The negative
/// root is a valid polar angle after reflection through the pole, see
/// [`canonical_pair`].
pub fn extremal_theta_max(c: f64) -> Result<[f64; 2]> {
    let arc = overlap_arc(c)?;
    Ok([0.5 * arc, -0.5 * arc])
}

/// Maps arbitrary real `(θ₁, θ₂, Δφ)` onto an equivalent [`MsrPair`].
///
/// `θ → −θ` together with `φ → φ + π` leaves the Bloch vector unchanged, as
/// does `θ → 2π − θ` with the same phase shift. Both `f` and `S` are invariant.
pub fn canonical_pair(theta1: f64, theta2: f64, delta_phi: f64) -> Result<MsrPair> {
    let fold = |theta: f64, phi: f64| {
        let t = theta.rem_euclid(TAU);
        if t > PI {
            ((TAU - t).min(PI), phi + PI)
        } else {
            (t, phi)
        }
    };
    let (t1, p1) = fold(theta1, delta_phi);
    let (t2, p2) = fold(theta2, 0.0);
    MsrPair::from_angles(t1, p1, t2, p2)
}

/// One closed-form extremal point: a stationary `θ₂` root together with the
/// companion `θ₁` and `Δφ ∈ {0, π}` that realise it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalWitness {
    /// Root as returned by [`extremal_theta_min`] / [`extremal_theta_max`].
    pub theta2_root: f64,
    pub theta1: f64,
    pub delta_phi: f64,
    pub pair: MsrPair,
    pub s: SValue,
    pub concurrence: Concurrence,
}

/// Realises each `θ₂` root of the requested branch.
///
/// Companions come from `arccos f = θ₁ − θ₂` (both signs) and
/// `arccos f = θ₁ + θ₂`; companions outside `[0, π]` are discarded, as are
/// combinations that miss the target concurrence. Of the survivors the one
/// best for `objective` is kept.
pub fn closed_form_witnesses(c: f64, objective: Objective) -> Result<Vec<ExtremalWitness>> {
    let arc = overlap_arc(c)?;
    let roots = match objective {
        Objective::Minimize => extremal_theta_min(c)?,
        Objective::Maximize => extremal_theta_max(c)?,
    };
    let mut out = Vec::with_capacity(2);
    for root in roots {
        let mut best: Option<ExtremalWitness> = None;
        for theta1 in [root + arc, root - arc, arc - root] {
            if !(0.0..=PI).contains(&theta1) {
                continue;
            }
            for delta_phi in [0.0, PI] {
                let pair = canonical_pair(theta1, root, delta_phi)?;
                let reached = concurrence_msr(&pair);
                if (reached.value() - c).abs() > WITNESS_TOLERANCE {
                    continue;
                }
                let s = s_closed_form(&pair);
                if best.is_none_or(|b| objective.improves(s.value(), b.s.value())) {
                    best = Some(ExtremalWitness {
                        theta2_root: root,
                        theta1,
                        delta_phi,
                        pair,
                        s,
                        concurrence: reached,
                    });
                }
            }
        }
        out.extend(best);
    }
    Ok(out)
}

/// Outcome of [`numeric_extremal_search`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub s_star: SValue,
    pub theta1: f64,
    pub theta2: f64,
    pub delta_phi: f64,
    pub objective: Objective,
    /// Concurrence actually reached at the reported angles.
    pub concurrence: Concurrence,
}

impl ExtremalResult {
    pub fn pair(&self) -> MsrPair {
        MsrPair::from_delta_phi(self.theta1, self.theta2, self.delta_phi)
            .expect("search only visits angles in [0, π]")
    }
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    s: f64,
    theta1: f64,
    theta2: f64,
    delta_phi: f64,
}

/// Evaluates S at `(θ₁, θ₂)` with Δφ chosen to hold the concurrence at `c`.
/// Returns `None` when no Δφ reaches it.
fn evaluate(theta1: f64, theta2: f64, c: f64, target_f: f64) -> Option<Candidate> {
    let delta_phi = match delta_phi_for_constant_c(theta1, theta2, c) {
        Ok(cos_dphi) => cos_dphi.acos(),
        // at a pole the overlap no longer depends on Δφ
        Err(Error::DegenerateAngles) => {
            if (theta1.cos() * theta2.cos() - target_f).abs() <= COS_DELTA_PHI_SLACK {
                0.0
            } else {
                return None;
            }
        }
        Err(_) => return None,
    };
    let pair = MsrPair::from_delta_phi(theta1, theta2, delta_phi).ok()?;
    Some(Candidate {
        s: s_closed_form(&pair).value(),
        theta1,
        theta2,
        delta_phi,
    })
}

fn keep_better(best: &mut Option<Candidate>, cand: Option<Candidate>, objective: Objective) {
    if let Some(cand) = cand {
        if best.is_none_or(|b| objective.improves(cand.s, b.s)) {
            *best = Some(cand);
        }
    }
}

/// Brute-force extremum of `S` over all states with concurrence `c`.
///
/// A `grid_n × grid_n` grid of cell centres over `(0, π)²` is scanned in
/// lexicographic `(θ₁, θ₂)` order, with `cos Δφ` solved from the concurrence
/// constraint and infeasible cells skipped. The best cell is then refined
/// `refine_iters` times on a local `(2m+1)²` grid whose half-width starts at
/// one cell and shrinks by 4 per pass. Refinement windows are clipped to the
/// closed square so that pole states (where Δφ drops out) are reachable.
/// Exact ties keep the earlier point, which makes the result deterministic.
pub fn numeric_extremal_search(
    c: f64,
    objective: Objective,
    grid_n: usize,
    refine_iters: usize,
) -> Result<ExtremalResult> {
    let c = concurrence(c)?;
    if grid_n < 16 {
        return Err(Error::GridTooSmall(grid_n));
    }
    let target_f = f_from_concurrence(c)?;
    let step = PI / grid_n as f64;

    let mut best = None;
    for i in 0..grid_n {
        let theta1 = (i as f64 + 0.5) * step;
        for j in 0..grid_n {
            let theta2 = (j as f64 + 0.5) * step;
            keep_better(&mut best, evaluate(theta1, theta2, c, target_f), objective);
        }
    }
    let mut best = best.ok_or(Error::NoFeasibleCell)?;

    // even half-count keeps the midpoint between two coarse cells on the grid
    let half_count = (grid_n / 2).next_multiple_of(2) as i64;
    let mut half_width = step;
    for _ in 0..refine_iters {
        let delta = half_width / half_count as f64;
        let centre = best;
        let mut local = Some(centre);
        for k in -half_count..=half_count {
            let theta1 = (centre.theta1 + k as f64 * delta).clamp(0.0, PI);
            for l in -half_count..=half_count {
                let theta2 = (centre.theta2 + l as f64 * delta).clamp(0.0, PI);
                keep_better(&mut local, evaluate(theta1, theta2, c, target_f), objective);
            }
        }
        best = local.expect("seeded with the incumbent");
        half_width *= SHRINK;
    }

    let result = ExtremalResult {
        s_star: SValue::new(best.s),
        theta1: best.theta1,
        theta2: best.theta2,
        delta_phi: best.delta_phi,
        objective,
        concurrence: Concurrence::new(0.0)?,
    };
    Ok(ExtremalResult {
        concurrence: concurrence_msr(&result.pair()),
        ..result
    })
}

/// Maximal CHSH value `β = 2√(1 + C²)` of a pure state with concurrence `C`.
pub fn chsh_max(c: f64) -> Result<f64> {
    let c = concurrence(c)?;
    Ok(2.0 * (1.0 + c * c).sqrt())
}

/// Minimal KCBS value expressed through the maximal CHSH value, obtained by
/// substituting `C = √(β²/4 − 1)` into `S_min(C)`:
/// `S = (5 − 3√5) √(β² − 4)/2 − √5`.
pub fn s_min_from_beta(beta: f64) -> Result<SValue> {
    let upper = 2.0 * 2f64.sqrt();
    if !(2.0 - BETA_SLACK..=upper + BETA_SLACK).contains(&beta) {
        return Err(Error::InvalidBeta(beta));
    }
    let root = ((beta - 2.0) * (beta + 2.0)).max(0.0).sqrt();
    Ok(SValue::from_formula(s_min_slope() * root / 2.0 + local_bound()))
}

/// Concurrence at which `S_min(C)` crosses the classical bound −3: `1/√5`.
pub fn concurrence_threshold() -> Concurrence {
    let c = (CLASSICAL_BOUND - local_bound()) / s_min_slope();
    debug_assert!((c - 1.0 / sqrt5()).abs() < 1e-15);
    Concurrence::new(c).expect("1/√5 lies in [0, 1]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::quantum_lower_limit;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn s_min_known_values() {
        assert!((s_min_for_concurrence(0.0).unwrap().value() + 5f64.sqrt()).abs() < 1e-15);
        assert!((s_min_for_concurrence(0.0).unwrap().value() + 2.2361).abs() < 1e-4);
        assert!(
            (s_min_for_concurrence(1.0).unwrap().value() - quantum_lower_limit()).abs() < 1e-15
        );
        let t = 1.0 / 5f64.sqrt();
        assert!((s_min_for_concurrence(t).unwrap().value() + 3.0).abs() < 1e-15);
        assert!(s_min_for_concurrence(1.01).is_err());
    }

    #[test]
    fn s_max_is_constant() {
        for c in [0.0, 0.5, 1.0] {
            let v = s_max_for_concurrence(c).unwrap().value();
            assert_eq!(v, 2.0 * 5f64.sqrt() - 5.0);
            assert!((v + 0.53).abs() < 0.005);
        }
        assert!(s_max_for_concurrence(-0.5).is_err());
    }

    #[test]
    fn theta_roots() {
        let close = |a: [f64; 2], b: [f64; 2]| (a[0] - b[0]).abs() < 1e-15 && (a[1] - b[1]).abs() < 1e-15;
        assert!(close(extremal_theta_min(1.0).unwrap(), [PI, 0.0]));
        assert!(close(extremal_theta_min(0.0).unwrap(), [FRAC_PI_2, FRAC_PI_2]));
        assert!(close(extremal_theta_min(1.0 / 3.0).unwrap(), [3.0 * FRAC_PI_4, FRAC_PI_4]));
        assert!(close(extremal_theta_max(0.0).unwrap(), [0.0, 0.0]));
        assert!(close(extremal_theta_max(1.0 / 3.0).unwrap(), [FRAC_PI_4, -FRAC_PI_4]));
        assert!(close(extremal_theta_max(1.0).unwrap(), [FRAC_PI_2, -FRAC_PI_2]));
        assert!(extremal_theta_min(2.0).is_err());
        assert!(extremal_theta_max(-1.0).is_err());
    }

    #[test]
    fn canonical_pair_preserves_s_and_f() {
        let pair = canonical_pair(0.4, -0.9, 0.3).unwrap();
        assert!((pair.star2.theta() - 0.9).abs() < 1e-15);
        let raw_f = 0.4f64.sin() * (-0.9f64).sin() * 0.3f64.cos() + 0.4f64.cos() * 0.9f64.cos();
        assert!((pair.f_value() - raw_f).abs() < 1e-15);
        let over = canonical_pair(4.0, 1.0, 0.0).unwrap();
        assert!((over.star1.theta() - (TAU - 4.0)).abs() < 1e-15);
    }

    #[test]
    fn witnesses_realise_closed_forms() {
        for k in 0..=10 {
            let c = k as f64 / 10.0;
            let min = closed_form_witnesses(c, Objective::Minimize).unwrap();
            assert_eq!(min.len(), 2, "c = {c}");
            for w in &min {
                assert!((w.s.value() - s_min_for_concurrence(c).unwrap().value()).abs() < 1e-10);
                assert!((w.concurrence.value() - c).abs() < 1e-10);
            }
            let max = closed_form_witnesses(c, Objective::Maximize).unwrap();
            assert_eq!(max.len(), 2, "c = {c}");
            for w in &max {
                assert!((w.s.value() - kcbs_upper_eigenvalue()).abs() < 1e-10);
                assert!((w.concurrence.value() - c).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn search_endpoints() {
        let r = numeric_extremal_search(0.0, Objective::Minimize, 128, 8).unwrap();
        assert!((r.s_star.value() + 5f64.sqrt()).abs() < 1e-6, "{r:?}");
        let r = numeric_extremal_search(1.0, Objective::Minimize, 128, 8).unwrap();
        assert!((r.s_star.value() - quantum_lower_limit()).abs() < 1e-6, "{r:?}");
        let r = numeric_extremal_search(0.5, Objective::Maximize, 128, 8).unwrap();
        assert!((r.s_star.value() - kcbs_upper_eigenvalue()).abs() < 1e-6, "{r:?}");
        assert!((r.concurrence.value() - 0.5).abs() < 1e-9);
        assert!((s_closed_form(&r.pair()).value() - r.s_star.value()).abs() < 1e-12);
    }

    #[test]
    fn search_rejects_bad_input() {
        assert_eq!(
            numeric_extremal_search(0.5, Objective::Minimize, 8, 1),
            Err(Error::GridTooSmall(8))
        );
        assert!(numeric_extremal_search(1.5, Objective::Minimize, 32, 1).is_err());
    }

    #[test]
    fn search_is_deterministic() {
        let a = numeric_extremal_search(0.3, Objective::Minimize, 32, 3).unwrap();
        let b = numeric_extremal_search(0.3, Objective::Minimize, 32, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chsh_relation() {
        assert_eq!(chsh_max(0.0).unwrap(), 2.0);
        assert!((chsh_max(1.0).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        let t = 1.0 / 5f64.sqrt();
        assert!((chsh_max(t).unwrap() - 2.0 * 1.2f64.sqrt()).abs() < 1e-15);
        assert!((chsh_max(t).unwrap() - 2.1909).abs() < 1e-4);

        assert!((s_min_from_beta(2.0).unwrap().value() + 5f64.sqrt()).abs() < 1e-15);
        assert!(
            (s_min_from_beta(2.0 * 2f64.sqrt()).unwrap().value() - quantum_lower_limit()).abs()
                < 1e-14
        );
        assert!((s_min_from_beta(2.0 * 1.2f64.sqrt()).unwrap().value() + 3.0).abs() < 1e-14);
        assert!(matches!(s_min_from_beta(1.9), Err(Error::InvalidBeta(_))));
        assert!(s_min_from_beta(3.0).is_err());
    }

    #[test]
    fn threshold() {
        let t = concurrence_threshold().value();
        assert!((t - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        assert!((t - 0.447).abs() < 5e-4);
        assert!((s_min_for_concurrence(t).unwrap().value() + 3.0).abs() < 1e-12);
    }
}
