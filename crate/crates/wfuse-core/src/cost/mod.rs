//! Resource-cost analytics.
//!
//! Costs are measured in primary three-photon W states: `R[W_3] = 1`, and
//! fusing states with success probability `P` costs
//! `R[W_out] = (sum of input costs) / P`. On top of that recursion this
//! module provides an exact no-recycle planner ([`dp::dp_norecycle`]),
//! equal-size growth sequences, a sub-exponential exponent fit
//! ([`fit::fit_exponent`]) and a seeded Monte Carlo simulation of set-based
//! recycling strategies ([`mc::mc_recycle`]).

pub mod dp;
pub mod fit;
pub mod mc;
pub mod rng;

pub use dp::{dp_norecycle, equal_size_costs, equal_size_sequence, is_reachable, PlanNode};
pub use fit::{fit_exponent, ExponentFit};
pub use mc::{
    default_sets, mc_recycle, set_index_for, CostRecord, FusionOrder, SizeInterval,
    StrategyConfig,
};
pub use rng::SplitMix64;
