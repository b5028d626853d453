//! Contextuality versus entanglement for effective qutrits.
//!
//! A symmetric two-qubit state is described by its two Majorana stars on the
//! Bloch sphere ([`msr::MsrPair`]). Read as a spin-1 state it can be tested
//! against the five-measurement KCBS non-contextuality inequality
//! ([`kcbs`]), and its concurrence fixes how far below the classical bound
//! −3 the KCBS sum can go ([`extremal`]).
//!
//! The crate exposes every closed form alongside an independent route to the
//! same number (matrix expectation values, pentagram construction, a brute
//! force constrained search), and [`verify`] cross-checks them.

pub mod classification;
pub mod consts;
pub mod error;
pub mod extremal;
pub mod kcbs;
pub mod measures;
pub mod msr;
pub mod sampling;
pub mod scan;
pub mod verify;

pub use classification::{classify_s, classify_state, Regime, StateReport};
pub use error::{Error, Result};
pub use extremal::{
    chsh_max, concurrence_threshold, extremal_theta_max, extremal_theta_min,
    numeric_extremal_search, s_max_for_concurrence, s_min_for_concurrence, s_min_from_beta,
    ExtremalResult, Objective,
};
pub use kcbs::{classical_bound, KcbsOperator, PentagramFrame, Spin1Matrix};
pub use measures::{
    concurrence_msr, concurrence_symmetric, delta_phi_for_constant_c, expectation_general,
    f_from_concurrence, s_closed_form, s_rational_form, s_via_concurrence, Concurrence, SValue,
};
pub use msr::{BlochAngles, MsrPair, NormConstant, Qutrit};
