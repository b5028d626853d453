//! Independent numerical routes to the closed forms.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use kcbs_core::consts::{kcbs_upper_eigenvalue, quantum_lower_limit};
use kcbs_core::extremal::{
    closed_form_witnesses, concurrence_threshold, numeric_extremal_search, s_min_for_concurrence,
    Objective,
};
use kcbs_core::kcbs::pentagram_vectors;
use kcbs_core::measures::{
    concurrence_msr, delta_phi_for_constant_c, expectation_general, s_closed_form,
};
use kcbs_core::sampling::{sample_pairs, DEFAULT_SEED};
use kcbs_core::{Error, KcbsOperator, MsrPair};

/// `|m⟩|n⟩ + |n⟩|m⟩` in the basis `|00⟩, |01⟩, |10⟩, |11⟩`, normalized.
fn two_qubit_state(pair: &MsrPair) -> [Complex64; 4] {
    let m = pair.star1.ket();
    let n = pair.star2.ket();
    let raw = [
        m[0] * n[0] + n[0] * m[0],
        m[0] * n[1] + n[0] * m[1],
        m[1] * n[0] + n[1] * m[0],
        m[1] * n[1] + n[1] * m[1],
    ];
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.map(|z| z / norm)
}

#[test]
fn tensor_product_route_to_qutrit_and_concurrence() {
    for pair in sample_pairs(1000, DEFAULT_SEED) {
        let psi = two_qubit_state(&pair);
        // the symmetric ket (|01⟩ + |10⟩)/√2 carries β = √2 · ψ₀₁
        let from_tensor = [psi[0], psi[1] / FRAC_1_SQRT_2, psi[3]];
        let q = pair.to_qutrit();
        for (amp, expected) in q.amplitudes.iter().zip(from_tensor) {
            assert!((amp - expected).norm() < 1e-12, "{pair:?}");
        }
        let wootters_pure = 2.0 * (psi[0] * psi[3] - psi[1] * psi[2]).norm();
        assert!((concurrence_msr(&pair).value() - wootters_pure).abs() < 1e-12);
    }
}

#[test]
fn pentagram_operator_reproduces_s_on_states() {
    let k = KcbsOperator::from_frame(&pentagram_vectors()).unwrap();
    for pair in sample_pairs(500, 17) {
        let s = expectation_general(&pair.to_qutrit(), &k).unwrap().value();
        assert!((s - s_closed_form(&pair).value()).abs() < 1e-10);
    }
}

#[test]
fn neutral_state_on_pentagram() {
    // ⟨0|A_jA_{j+1}|0⟩ = 1 − 4 cos²Θ with cos²Θ = 1/√5, summed over five edges
    let k = KcbsOperator::from_frame(&pentagram_vectors()).unwrap();
    let neutral = kcbs_core::Qutrit::from_real(0.0, 1.0, 0.0);
    let s = expectation_general(&neutral, &k).unwrap().value();
    assert!((s - (5.0 - 20.0 / 5f64.sqrt())).abs() < 1e-12);
    assert!((s - quantum_lower_limit()).abs() < 1e-12);
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn threshold_by_bisection() {
    let root = bisect(|c| s_min_for_concurrence(c).unwrap().value() + 3.0, 0.0, 1.0);
    assert!((root - concurrence_threshold().value()).abs() < 1e-10);
    assert!((root - 0.447).abs() < 5e-4);
}

#[test]
fn constant_c_constraint_round_trip() {
    let mut checked = 0;
    for pair in sample_pairs(2000, 99) {
        let (t1, t2) = (pair.star1.theta(), pair.star2.theta());
        for c in [0.05, 0.3, 0.6, 0.95] {
            match delta_phi_for_constant_c(t1, t2, c) {
                Ok(cos_dphi) => {
                    let p = MsrPair::from_delta_phi(t1, t2, cos_dphi.acos()).unwrap();
                    assert!((concurrence_msr(&p).value() - c).abs() < 1e-12);
                    checked += 1;
                }
                Err(Error::Infeasible { cos_delta_phi, .. }) => assert!(cos_delta_phi.abs() > 1.0),
                Err(e) => panic!("unexpected {e}"),
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn numeric_oracle_on_dense_ladder() {
    for k in 0..=20 {
        let c = k as f64 / 20.0;
        let min = numeric_extremal_search(c, Objective::Minimize, 64, 8).unwrap();
        assert!((min.s_star.value() - s_min_for_concurrence(c).unwrap().value()).abs() < 1e-6, "c = {c}");
        assert!((min.concurrence.value() - c).abs() < 1e-9);
        let max = numeric_extremal_search(c, Objective::Maximize, 64, 8).unwrap();
        assert!((max.s_star.value() - kcbs_upper_eigenvalue()).abs() < 1e-6, "c = {c}");
        assert!((max.concurrence.value() - c).abs() < 1e-9);
    }
}

#[test]
fn numeric_minimiser_sits_on_closed_form_angles() {
    for c in [0.2, 0.5, 0.8] {
        let found = numeric_extremal_search(c, Objective::Minimize, 128, 8).unwrap();
        let witnesses = closed_form_witnesses(c, Objective::Minimize).unwrap();
        let nearest = witnesses
            .iter()
            .map(|w| {
                (w.pair.star1.theta() - found.theta1)
                    .abs()
                    .max((w.pair.star2.theta() - found.theta2).abs())
            })
            .fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-4, "c = {c}: {nearest}");
        // minimum lies on θ₁ + θ₂ = π
        assert!((found.theta1 + found.theta2 - PI).abs() < 1e-4);
    }
}
