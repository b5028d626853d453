//! Self-consistency checks across every independent route in the crate.
//!
//! Each check reports the largest error it observed and the tolerance it is
//! held to. [`run_verification`] backs the `verify` subcommand.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::classification::{classify_state, Regime};
use crate::consts::{kcbs_upper_eigenvalue, local_bound, s_min_slope};
use crate::error::{Error, Result};
use crate::extremal::{
    chsh_max, closed_form_witnesses, concurrence_threshold, numeric_extremal_search,
    s_min_for_concurrence, s_min_from_beta, Objective, DEFAULT_GRID, DEFAULT_REFINE_ITERS,
};
use crate::kcbs::{enumerate_classical, pentagram_vectors, KcbsOperator};
use crate::measures::{
    concurrence_msr, concurrence_symmetric, expectation_general, f_from_concurrence,
    s_closed_form, s_rational_form, s_via_concurrence,
};
use crate::msr::MsrPair;
use crate::sampling::sample_pairs;

pub const EQUIVALENCE_TOLERANCE: f64 = 1e-12;
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-10;
pub const ORACLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, max_error: f64, tolerance: f64) -> Self {
        Self {
            name,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<32} max error {:>10.3e}  tolerance {:>8.1e}  {}",
            self.name,
            self.max_error,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn max_over<T>(items: &[T], f: impl Fn(&T) -> f64 + Sync + Send) -> f64
where
    T: Sync,
{
    items.par_iter().map(f).reduce(|| 0.0, f64::max)
}

/// Concurrences `0, 0.1, …, 1`.
pub fn concurrence_ladder() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

/// Largest pairwise gap between the four routes to S at one state.
pub fn s_route_spread(pair: &MsrPair) -> f64 {
    let matrix = expectation_general(&pair.to_qutrit(), &KcbsOperator::diagonal())
        .expect("MSR states are normalized")
        .value();
    let routes = [
        s_closed_form(pair).value(),
        s_rational_form(pair).value(),
        s_via_concurrence(pair).value(),
        matrix,
    ];
    let hi = routes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = routes.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo
}

pub fn concurrence_route_gap(pair: &MsrPair) -> f64 {
    let symmetric = concurrence_symmetric(&pair.to_qutrit())
        .expect("MSR states are normalized")
        .value();
    (concurrence_msr(pair).value() - symmetric).abs()
}

/// How far a state falls outside `[S_min(C), 2√5 − 5]`; zero when inside.
pub fn dominance_violation(pair: &MsrPair) -> f64 {
    let s = s_closed_form(pair).value();
    let floor = s_min_for_concurrence(concurrence_msr(pair).value())
        .expect("concurrence is in range")
        .value();
    (floor - s).max(s - kcbs_upper_eigenvalue()).max(0.0)
}

/// Largest `|numeric − closed form|` over the concurrence ladder.
pub fn oracle_gap(objective: Objective, grid_n: usize, refine_iters: usize) -> Result<f64> {
    let gaps = concurrence_ladder()
        .into_par_iter()
        .map(|c| {
            let numeric = numeric_extremal_search(c, objective, grid_n, refine_iters)?;
            let exact = match objective {
                Objective::Minimize => s_min_for_concurrence(c)?.value(),
                Objective::Maximize => kcbs_upper_eigenvalue(),
            };
            Ok((numeric.s_star.value() - exact).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(gaps.into_iter().fold(0.0, f64::max))
}

pub fn run_verification(samples: usize, seed: u64) -> Result<VerificationReport> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let pairs = sample_pairs(samples, seed);
    let mut checks = Vec::new();

    checks.push(CheckResult::new(
        "qutrit_normalization",
        max_over(&pairs, |p| (p.to_qutrit().norm_sqr() - 1.0).abs()),
        EQUIVALENCE_TOLERANCE,
    ));
    checks.push(CheckResult::new(
        "star_swap_symmetry",
        max_over(&pairs, |p| {
            let (a, b) = (p.to_qutrit(), p.swapped().to_qutrit());
            (0..3)
                .map(|k| (a.amplitudes[k] - b.amplitudes[k]).norm())
                .fold(0.0, f64::max)
        }),
        EQUIVALENCE_TOLERANCE,
    ));
    checks.push(CheckResult::new(
        "s_four_way_equivalence",
        max_over(&pairs, s_route_spread),
        EQUIVALENCE_TOLERANCE,
    ));
    checks.push(CheckResult::new(
        "concurrence_equivalence",
        max_over(&pairs, concurrence_route_gap),
        EQUIVALENCE_TOLERANCE,
    ));
    checks.push(CheckResult::new(
        "f_concurrence_round_trip",
        concurrence_ladder()
            .iter()
            .map(|&c| {
                let f = f_from_concurrence(c).expect("ladder is in range");
                ((1.0 - f) / (3.0 + f) - c).abs()
            })
            .fold(0.0, f64::max),
        EQUIVALENCE_TOLERANCE,
    ));

    let frame = pentagram_vectors();
    checks.push(CheckResult::new(
        "pentagram_orthogonality",
        frame.max_orthogonality_defect().1.max(frame.max_norm_defect()),
        EQUIVALENCE_TOLERANCE,
    ));
    checks.push(CheckResult::new(
        "diag_vs_pentagram",
        KcbsOperator::from_frame(&frame)?.max_entry_difference(&KcbsOperator::diagonal()),
        CONSTRUCTION_TOLERANCE,
    ));
    checks.push(CheckResult::new(
        "classical_bound = -3",
        f64::from((enumerate_classical().minimum + 3).abs()),
        0.0,
    ));

    checks.push(CheckResult::new(
        "s_min_oracle",
        oracle_gap(Objective::Minimize, DEFAULT_GRID, DEFAULT_REFINE_ITERS)?,
        ORACLE_TOLERANCE,
    ));
    checks.push(CheckResult::new(
        "s_max_oracle",
        oracle_gap(Objective::Maximize, DEFAULT_GRID, DEFAULT_REFINE_ITERS)?,
        ORACLE_TOLERANCE,
    ));
    let mut witness_gap: f64 = 0.0;
    for c in concurrence_ladder() {
        for objective in [Objective::Minimize, Objective::Maximize] {
            let target = match objective {
                Objective::Minimize => s_min_for_concurrence(c)?.value(),
                Objective::Maximize => kcbs_upper_eigenvalue(),
            };
            let witnesses = closed_form_witnesses(c, objective)?;
            if witnesses.len() != 2 {
                witness_gap = f64::INFINITY;
            }
            for w in witnesses {
                witness_gap = witness_gap
                    .max((w.s.value() - target).abs())
                    .max((w.concurrence.value() - c).abs());
            }
        }
    }
    checks.push(CheckResult::new(
        "closed_form_witnesses",
        witness_gap,
        CONSTRUCTION_TOLERANCE,
    ));

    let threshold = concurrence_threshold().value();
    checks.push(CheckResult::new(
        "threshold",
        (s_min_for_concurrence(threshold)?.value() + 3.0)
            .abs()
            .max((threshold - 1.0 / 5f64.sqrt()).abs()),
        EQUIVALENCE_TOLERANCE,
    ));

    let mut chsh_gap = (chsh_max(0.0)? - 2.0)
        .abs()
        .max((chsh_max(1.0)? - 2.0 * 2f64.sqrt()).abs());
    for c in concurrence_ladder() {
        let via_beta = s_min_from_beta(chsh_max(c)?)?.value();
        chsh_gap = chsh_gap.max((via_beta - s_min_for_concurrence(c)?.value()).abs());
    }
    checks.push(CheckResult::new(
        "chsh_composition",
        chsh_gap,
        EQUIVALENCE_TOLERANCE,
    ));
    let mut proportionality_gap: f64 = 0.0;
    for c in concurrence_ladder().into_iter().skip(1) {
        let beta = chsh_max(c)?;
        let ratio = (s_min_from_beta(beta)?.value() - local_bound()) / (beta * beta - 4.0).sqrt();
        proportionality_gap = proportionality_gap.max((ratio - s_min_slope() / 2.0).abs());
    }
    checks.push(CheckResult::new(
        "chsh_proportionality",
        proportionality_gap,
        CONSTRUCTION_TOLERANCE,
    ));

    checks.push(CheckResult::new(
        "dominance",
        max_over(&pairs, dominance_violation),
        CONSTRUCTION_TOLERANCE,
    ));
    let misclassified = pairs
        .iter()
        .map(classify_state)
        .filter(|r| {
            r.regime == Regime::ContextualNonlocal
                && r.c.value() <= threshold - CONSTRUCTION_TOLERANCE
        })
        .count();
    checks.push(CheckResult::new(
        "contextual_implies_entangled",
        misclassified as f64,
        0.0,
    ));

    Ok(VerificationReport { checks })
}
