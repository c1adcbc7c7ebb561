//! Monte Carlo simulation of set-based recycling strategies.
//!
//! States are kept in size-bucketed sets. Whenever the scheme's fusion arity
//! is available in some set (lowest index first by default), those states
//! are fused and the outcome is drawn from the scheme's exact outcome
//! distribution; recyclable result blocks re-enter the set matching their
//! size, while bare H photons and single V photons are discarded. When no
//! set is ready, a fresh `W_3` is inserted into the first set at a cost of
//! one. A run stops as soon as any state reaches the target set (or beyond,
//! which mixed-size fusions can overshoot into).
//!
//! Runs are embarrassingly parallel; each draws from its own documented
//! substream of the master seed, and the mean/standard deviation are
//! aggregated with pairwise summation in run order, so serial and parallel
//! execution produce bit-identical records.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;

use crate::error::Error;
use crate::types::{OutcomeClass, SchemeId};

use super::rng::{substream, SplitMix64};

/// A half-open size interval `[lo, hi)`; `hi = None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeInterval {
    pub lo: u64,
    pub hi: Option<u64>,
}

impl SizeInterval {
    pub fn new(lo: u64, hi: Option<u64>) -> SizeInterval {
        SizeInterval { lo, hi }
    }

    pub fn contains(&self, size: u64) -> bool {
        size >= self.lo && self.hi.is_none_or(|hi| size < hi)
    }
}

impl fmt::Display for SizeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            None => write!(f, "{}+", self.lo),
            Some(hi) if hi == self.lo + 1 => write!(f, "{}", self.lo),
            Some(hi) => write!(f, "{}-{}", self.lo, hi - 1),
        }
    }
}

/// Which ready set a fusion round picks first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FusionOrder {
    #[default]
    LowestSetFirst,
    HighestSetFirst,
}

/// Full description of one recycling simulation.
#[derive(Clone, Debug)]
pub struct StrategyConfig {
    pub scheme: SchemeId,
    /// Size buckets, ascending, contiguous from 3, last one unbounded.
    pub sets: Vec<SizeInterval>,
    /// Index of the set to reach.
    pub target_set: usize,
    pub runs: u64,
    pub master_seed: u64,
    /// When enabled, size-2 W states produced by recycling collect in a
    /// Bell bin and are fused like any other set; when disabled they are
    /// discarded. Disabled by default: only `W_3` primaries are accounted.
    pub bell_bin_enabled: bool,
    pub fusion_order: FusionOrder,
}

impl StrategyConfig {
    /// Default-sets strategy for a scheme and target set index.
    pub fn new(scheme: SchemeId, target_set: usize, runs: u64, master_seed: u64) -> StrategyConfig {
        StrategyConfig {
            scheme,
            sets: default_sets(scheme),
            target_set,
            runs,
            master_seed,
            bell_bin_enabled: false,
            fusion_order: FusionOrder::LowestSetFirst,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.runs == 0 {
            return Err(Error::InvalidStrategy("runs must be at least 1".into()));
        }
        if self.sets.is_empty() {
            return Err(Error::InvalidStrategy("no sets given".into()));
        }
        if self.sets[0].lo != 3 {
            return Err(Error::InvalidStrategy(format!(
                "the first set must start at size 3, got {}",
                self.sets[0].lo
            )));
        }
        for (i, pair) in self.sets.windows(2).enumerate() {
            match pair[0].hi {
                Some(hi) if hi == pair[1].lo && hi > pair[0].lo => {}
                Some(_) => {
                    return Err(Error::InvalidStrategy(format!(
                        "sets {i} and {} must be ascending and contiguous",
                        i + 1
                    )))
                }
                None => {
                    return Err(Error::InvalidStrategy(format!(
                        "set {i} is unbounded but not last"
                    )))
                }
            }
        }
        if self.sets.last().unwrap().hi.is_some() {
            return Err(Error::InvalidStrategy(
                "the last set must be unbounded so all sizes >= 3 are covered".into(),
            ));
        }
        if self.target_set >= self.sets.len() {
            return Err(Error::InvalidStrategy(format!(
                "target set {} out of range (have {} sets)",
                self.target_set,
                self.sets.len()
            )));
        }
        Ok(())
    }
}

/// Result of a Monte Carlo simulation: mean and standard deviation of the
/// number of `W_3` primaries consumed, over `runs` independent runs. A
/// record is a pure function of its configuration and seed.
#[derive(Clone, Debug, PartialEq)]
pub struct CostRecord {
    pub scheme: SchemeId,
    pub target_set: usize,
    pub runs: u64,
    pub seed: u64,
    pub mean_cost: f64,
    pub std_dev: f64,
}

/// The default set boundaries for each scheme.
///
/// Three-state: `{3}, [4,7), [7,16), [16,43), [43,124), [124,..)`. The
/// two-state schemes share the doubling rule `S_l = (2^(l-1)+2, 2^l+2]`,
/// here: `{3}, {4}, [5,7), [7,11), [11,19), ...`, capped with an unbounded
/// final set.
pub fn default_sets(scheme: SchemeId) -> Vec<SizeInterval> {
    match scheme {
        SchemeId::ThreeState => vec![
            SizeInterval::new(3, Some(4)),
            SizeInterval::new(4, Some(7)),
            SizeInterval::new(7, Some(16)),
            SizeInterval::new(16, Some(43)),
            SizeInterval::new(43, Some(124)),
            SizeInterval::new(124, None),
        ],
        SchemeId::TwoBasic | SchemeId::TwoEnhanced => {
            let mut sets = vec![SizeInterval::new(3, Some(4))];
            // S_l covers (2^(l-1)+2, 2^l+2]
            for l in 1..=11u32 {
                let lo = (1u64 << (l - 1)) + 3;
                let hi = (1u64 << l) + 3;
                sets.push(SizeInterval::new(lo, Some(hi)));
            }
            let last = sets.last_mut().unwrap();
            last.hi = None;
            sets
        }
    }
}

/// Index of the set containing `size`, if any.
pub fn set_index_for(sets: &[SizeInterval], size: u64) -> Option<usize> {
    sets.iter().position(|s| s.contains(size))
}

/// Outcome classes and probabilities for fusing the given input sizes,
/// cumulative in a fixed order. Matches the exact rational distributions of
/// the analytic engine (asserted by test), evaluated in f64 for speed.
fn outcome_distribution(scheme: SchemeId, inputs: &[u64]) -> Vec<(OutcomeClass, f64)> {
    match scheme {
        SchemeId::ThreeState => {
            let (n, m, t) = (inputs[0], inputs[1], inputs[2]);
            let den = (n * m * t) as f64;
            vec![
                (OutcomeClass::Success, (n + m + t - 3) as f64 / den),
                (OutcomeClass::Recycle, ((n - 1) * (m - 1) * (t - 1)) as f64 / den),
                (OutcomeClass::PartialRecycle, ((n - 1) * (m - 1)) as f64 / den),
                (OutcomeClass::PartialSuccess, ((n + m - 2) * (t - 1)) as f64 / den),
                (OutcomeClass::Failure, 1.0 / den),
            ]
        }
        SchemeId::TwoBasic => {
            let (n, m) = (inputs[0], inputs[1]);
            let den = (n * m) as f64;
            vec![
                (OutcomeClass::Success, (n + m - 2) as f64 / den),
                (OutcomeClass::Recycle, ((n - 1) * (m - 1)) as f64 / den),
                (OutcomeClass::Failure, 1.0 / den),
            ]
        }
        SchemeId::TwoEnhanced => {
            let (n, m) = (inputs[0], inputs[1]);
            let den = (n * m) as f64;
            vec![
                (OutcomeClass::Success, (n + m - 1) as f64 / den),
                (OutcomeClass::Recycle, ((n - 1) * (m - 1)) as f64 / den),
            ]
        }
    }
}

/// Sizes of the W blocks surviving an outcome; all-H blocks are omitted
/// (they carry no recyclable state). Largest block first.
fn result_sizes(scheme: SchemeId, class: OutcomeClass, inputs: &[u64]) -> Vec<u64> {
    match scheme {
        SchemeId::ThreeState => {
            let (n, m, t) = (inputs[0], inputs[1], inputs[2]);
            match class {
                OutcomeClass::Success => vec![n + m + t - 3],
                OutcomeClass::Recycle => vec![n - 1, m - 1, t - 1],
                OutcomeClass::PartialRecycle => vec![n - 1, m - 1],
                OutcomeClass::PartialSuccess => vec![n + m - 2, t - 1],
                OutcomeClass::Failure => vec![],
            }
        }
        SchemeId::TwoBasic | SchemeId::TwoEnhanced => {
            let (n, m) = (inputs[0], inputs[1]);
            match class {
                OutcomeClass::Success => vec![fused(scheme, n, m)],
                OutcomeClass::Recycle => vec![n - 1, m - 1],
                _ => vec![],
            }
        }
    }
}

fn fused(scheme: SchemeId, n: u64, m: u64) -> u64 {
    match scheme {
        SchemeId::TwoBasic => n + m - 2,
        _ => n + m - 1,
    }
}

fn sample_class(dist: &[(OutcomeClass, f64)], rng: &mut SplitMix64) -> OutcomeClass {
    let u = rng.next_f64();
    let mut acc = 0.0;
    for &(class, p) in dist {
        acc += p;
        if u < acc {
            return class;
        }
    }
    dist.last().unwrap().0
}

/// State of one run: FIFO queues per set plus the optional Bell bin.
struct Inventory {
    sets: Vec<VecDeque<u64>>,
    bell: VecDeque<u64>,
}

fn run_once(cfg: &StrategyConfig, mut rng: SplitMix64) -> u64 {
    let arity = cfg.scheme.fusion_arity();
    let target_lo = cfg.sets[cfg.target_set].lo;
    let mut inv = Inventory {
        sets: vec![VecDeque::new(); cfg.sets.len()],
        bell: VecDeque::new(),
    };
    let mut cost = 0u64;

    loop {
        match ready_bin(cfg, &inv, arity) {
            Some(bin) => {
                let queue = match bin {
                    None => &mut inv.bell,
                    Some(idx) => &mut inv.sets[idx],
                };
                let inputs: Vec<u64> = queue.drain(..arity).collect();
                let class = sample_class(&outcome_distribution(cfg.scheme, &inputs), &mut rng);
                for size in result_sizes(cfg.scheme, class, &inputs) {
                    if size >= target_lo {
                        return cost;
                    }
                    rebin(cfg, &mut inv, size);
                }
            }
            None => {
                cost += 1;
                if 3 >= target_lo {
                    return cost;
                }
                inv.sets[0].push_back(3);
            }
        }
    }
}

/// The bin to fuse from, honoring the configured order. `None` in the outer
/// Option means no bin is ready; `Some(None)` is the Bell bin.
#[allow(clippy::option_option)]
fn ready_bin(cfg: &StrategyConfig, inv: &Inventory, arity: usize) -> Option<Option<usize>> {
    let bell_ready = cfg.bell_bin_enabled && inv.bell.len() >= arity;
    let set_ready = |idx: usize| inv.sets[idx].len() >= arity;
    match cfg.fusion_order {
        FusionOrder::LowestSetFirst => {
            if bell_ready {
                return Some(None);
            }
            (0..inv.sets.len()).find(|&i| set_ready(i)).map(Some)
        }
        FusionOrder::HighestSetFirst => {
            if let Some(i) = (0..inv.sets.len()).rev().find(|&i| set_ready(i)) {
                return Some(Some(i));
            }
            bell_ready.then_some(None)
        }
    }
}

fn rebin(cfg: &StrategyConfig, inv: &mut Inventory, size: u64) {
    if size >= 3 {
        if let Some(idx) = set_index_for(&cfg.sets, size) {
            inv.sets[idx].push_back(size);
        }
    } else if size == 2 && cfg.bell_bin_enabled {
        inv.bell.push_back(2);
    }
    // single V photons and all-H blocks carry nothing worth keeping
}

/// Pairwise (cascade) summation; deterministic for a given slice order.
fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Runs the recycling simulation and aggregates the per-run costs.
///
/// Deterministic: a given `(config, master_seed)` always produces the same
/// record, independent of how many threads execute the runs.
pub fn mc_recycle(config: &StrategyConfig) -> Result<CostRecord, Error> {
    config.validate()?;
    let costs: Vec<f64> = (0..config.runs)
        .into_par_iter()
        .map(|r| run_once(config, substream(config.master_seed, r)) as f64)
        .collect();

    let runs = config.runs as f64;
    let mean = pairwise_sum(&costs) / runs;
    let std_dev = if config.runs > 1 {
        let sq: Vec<f64> = costs.iter().map(|c| (c - mean) * (c - mean)).collect();
        (pairwise_sum(&sq) / (runs - 1.0)).sqrt()
    } else {
        0.0
    };

    Ok(CostRecord {
        scheme: config.scheme,
        target_set: config.target_set,
        runs: config.runs,
        seed: config.master_seed,
        mean_cost: mean,
        std_dev,
    })
}
