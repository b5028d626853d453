//! Three-band taxonomy of qutrit states by their KCBS value.
//!
//! | band                     | S                 |
//! |--------------------------|-------------------|
//! | `ContextualNonlocal`     | `S < −3`          |
//! | `NonlocalNoncontextual`  | `−3 ≤ S < −√5`    |
//! | `Local`                  | `−√5 ≤ S`         |
//!
//! The names follow the usual reading of the bands: below `−√5` a state must
//! be entangled, below `−3` it is also contextual. Only `S` is inspected.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::consts::{kcbs_upper_eigenvalue, local_bound, quantum_lower_limit, CLASSICAL_BOUND};
use crate::error::{Error, Result};
use crate::measures::{concurrence_msr, s_closed_form, Concurrence, SValue};
use crate::msr::MsrPair;

const SPECTRAL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    ContextualNonlocal,
    NonlocalNoncontextual,
    Local,
}

impl Regime {
    pub const ALL: [Regime; 3] = [
        Regime::ContextualNonlocal,
        Regime::NonlocalNoncontextual,
        Regime::Local,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Regime::ContextualNonlocal => "ContextualNonlocal",
            Regime::NonlocalNoncontextual => "NonlocalNoncontextual",
            Regime::Local => "Local",
        }
    }

    fn of(s: f64) -> Self {
        if s < CLASSICAL_BOUND {
            Regime::ContextualNonlocal
        } else if s < local_bound() {
            Regime::NonlocalNoncontextual
        } else {
            Regime::Local
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify_s(s: f64) -> Result<Regime> {
    let in_spectrum = s >= quantum_lower_limit() - SPECTRAL_SLACK
        && s <= kcbs_upper_eigenvalue() + SPECTRAL_SLACK;
    if !in_spectrum {
        return Err(Error::InvalidS(s));
    }
    Ok(Regime::of(s))
}

/// S, concurrence and regime of one state, with the angles echoed back.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateReport {
    pub s: SValue,
    pub c: Concurrence,
    pub regime: Regime,
    pub theta1: f64,
    pub theta2: f64,
    pub delta_phi: f64,
}

pub fn classify_state(pair: &MsrPair) -> StateReport {
    let s = s_closed_form(pair);
    StateReport {
        s,
        c: concurrence_msr(pair),
        regime: Regime::of(s.value()),
        theta1: pair.star1.theta(),
        theta2: pair.star2.theta(),
        delta_phi: pair.delta_phi(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn bands_and_boundaries() {
        assert_eq!(classify_s(quantum_lower_limit()).unwrap(), Regime::ContextualNonlocal);
        assert_eq!(classify_s(-3.0).unwrap(), Regime::NonlocalNoncontextual);
        assert_eq!(classify_s(-3.0 - 1e-12).unwrap(), Regime::ContextualNonlocal);
        assert_eq!(classify_s(-5f64.sqrt()).unwrap(), Regime::Local);
        assert_eq!(
            classify_s(-5f64.sqrt() - 1e-12).unwrap(),
            Regime::NonlocalNoncontextual
        );
        assert_eq!(classify_s(-1.0).unwrap(), Regime::Local);
        assert_eq!(classify_s(kcbs_upper_eigenvalue()).unwrap(), Regime::Local);
    }

    #[test]
    fn out_of_spectrum_is_rejected() {
        assert!(matches!(classify_s(-4.0), Err(Error::InvalidS(_))));
        assert!(classify_s(0.0).is_err());
        assert!(classify_s(f64::NAN).is_err());
    }

    #[test]
    fn reports_for_reference_states() {
        let r = classify_state(&MsrPair::from_angles(PI, 0.0, 0.0, 0.0).unwrap());
        assert!((r.s.value() - quantum_lower_limit()).abs() < 1e-14);
        assert_eq!(r.c.value(), 1.0);
        assert_eq!(r.regime, Regime::ContextualNonlocal);

        let r = classify_state(&MsrPair::from_delta_phi(FRAC_PI_2, FRAC_PI_2, 0.0).unwrap());
        assert!((r.s.value() + 5f64.sqrt()).abs() < 1e-14);
        assert!(r.c.value() < 1e-15);

        let r = classify_state(&MsrPair::from_angles(0.0, 0.0, 0.0, 0.0).unwrap());
        assert!((r.s.value() - kcbs_upper_eigenvalue()).abs() < 1e-14);
        assert_eq!(r.c.value(), 0.0);
        assert_eq!(r.regime, Regime::Local);
    }

    #[test]
    fn labels_round_trip_through_serde() {
        for regime in Regime::ALL {
            let json = serde_json::to_string(&regime).unwrap();
            assert_eq!(json, format!("\"{}\"", regime.label()));
            assert_eq!(serde_json::from_str::<Regime>(&json).unwrap(), regime);
        }
    }
}
