//! Exact simulation and resource planning for optical W-state fusion.
//!
//! This crate models, at the polarization-qubit level, fusion gates that merge
//! W states into larger ones, and the planning machinery needed to estimate
//! what such preparations cost in primary `|W_3>` resources:
//!
//! * [`oracle`] — a dense statevector simulator of the fusion pipelines
//!   (Fredkin gate + postselective fusion gates). It is deliberately
//!   brute-force: every analytic claim in this crate can be checked against it.
//! * [`analytic`] — closed-form truth tables and outcome distributions with
//!   exact rational probabilities, valid for state sizes far beyond what the
//!   statevector simulator can hold.
//! * [`cost`] — a no-recycle dynamic-programming planner over the fusion cost
//!   recursion, equal-size growth sequences, sub-exponential exponent fits,
//!   and a seeded Monte Carlo simulation of set-based recycling strategies.
//!
//! Probabilities on the analytic path are exact rationals end to end; floating
//! point appears only in the statevector oracle, the Monte Carlo engine and
//! the exponent fit.

pub mod analytic;
pub mod block;
pub mod cost;
pub mod error;
pub mod oracle;
pub mod rational;
pub mod state;
pub mod types;

pub use block::{Block, BlockState};
pub use error::Error;
pub use rational::Rational;
pub use state::{PartyTag, PureState};
pub use types::{GateOutcome, OutcomeClass, Polarization, RowResult, SchemeId};
