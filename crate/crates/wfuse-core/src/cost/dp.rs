//! Exact no-recycle planning via dynamic programming.
//!
//! Starting from unit-cost `W_3` primaries, the planner minimizes the cost
//! recursion `R[W_out] = (sum of input costs) / P_success` over every way of
//! splitting the target into reachable input sizes. All arithmetic is exact
//! rational, so DP results can be asserted with equality.

use std::collections::HashMap;

use crate::error::Error;
use crate::rational::Rational;
use crate::types::SchemeId;

/// A node of the fusion plan tree. Leaves are `W_3` primaries with cost 1;
/// an internal node fuses its children with the stated success probability,
/// so `cost = (sum of child costs) / success_prob` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanNode {
    pub size: u64,
    pub cost: Rational,
    /// Success probability of the fusion producing this node; 1 for leaves.
    pub success_prob: Rational,
    pub children: Vec<PlanNode>,
}

impl PlanNode {
    fn leaf() -> PlanNode {
        PlanNode {
            size: 3,
            cost: Rational::one(),
            success_prob: Rational::one(),
            children: Vec::new(),
        }
    }
}

/// Whether `size` can be produced from `W_3` primaries with the scheme.
///
/// Growing by `n+m+t-3` keeps sizes in the multiples of 3; `n+m-2` reaches
/// every size >= 3; `n+m-1` preserves oddness.
pub fn is_reachable(scheme: SchemeId, size: u64) -> bool {
    if size < 3 {
        return false;
    }
    match scheme {
        SchemeId::ThreeState => size.is_multiple_of(3),
        SchemeId::TwoBasic => true,
        SchemeId::TwoEnhanced => size % 2 == 1,
    }
}

fn unreachable_error(scheme: SchemeId, target: u64) -> Error {
    let below = (3..target).rev().find(|&s| is_reachable(scheme, s));
    let above = (target + 1..).find(|&s| is_reachable(scheme, s)).unwrap();
    let mut nearest = Vec::new();
    if let Some(b) = below {
        nearest.push(b);
    }
    nearest.push(above);
    Error::UnreachableTarget {
        scheme,
        target,
        nearest,
    }
}

/// Success probability of fusing the given input sizes under the scheme.
fn success_prob(scheme: SchemeId, inputs: &[u64]) -> Rational {
    let out = fused_size(scheme, inputs);
    let den: u64 = inputs.iter().product();
    Rational::from_u64(out) / Rational::from_u64(den)
}

/// Output size of a successful fusion of the given inputs.
pub(crate) fn fused_size(scheme: SchemeId, inputs: &[u64]) -> u64 {
    let total: u64 = inputs.iter().sum();
    match scheme {
        SchemeId::ThreeState => total - 3,
        SchemeId::TwoBasic => total - 2,
        SchemeId::TwoEnhanced => total - 1,
    }
}

type Memo = HashMap<u64, (Rational, Vec<u64>)>;

/// Fills the memo with optimal costs for every reachable size up to
/// `target`. Entries map a size to its cost and the chosen input split
/// (empty for the base size 3). Ties resolve to the lexicographically
/// smallest split so planning is deterministic.
fn fill_memo(scheme: SchemeId, target: u64) -> Memo {
    let mut memo: Memo = HashMap::new();
    memo.insert(3, (Rational::one(), Vec::new()));

    let step = match scheme {
        SchemeId::ThreeState => 3,
        SchemeId::TwoBasic => 1,
        SchemeId::TwoEnhanced => 2,
    };
    let mut size = 3 + step;
    while size <= target {
        let mut best: Option<(Rational, Vec<u64>)> = None;
        match scheme {
            SchemeId::ThreeState => {
                // n <= m <= t, all multiples of 3, n + m + t = size + 3
                let budget = size + 3;
                let mut n = 3;
                while 3 * n <= budget {
                    let mut m = n;
                    while n + 2 * m <= budget {
                        let t = budget - n - m;
                        let cand = candidate(&memo, &[n, m, t], size);
                        better(&mut best, cand, &[n, m, t]);
                        m += 3;
                    }
                    n += 3;
                }
            }
            SchemeId::TwoBasic | SchemeId::TwoEnhanced => {
                // n + m: fused size is n+m-2 (basic) or n+m-1 (enhanced)
                let budget = match scheme {
                    SchemeId::TwoBasic => size + 2,
                    _ => size + 1,
                };
                let mut n = 3;
                while 2 * n <= budget {
                    let m = budget - n;
                    let cand = candidate(&memo, &[n, m], size);
                    better(&mut best, cand, &[n, m]);
                    n += step;
                }
            }
        }
        let (cost, split) = best.expect("every reachable size above 3 has a split");
        memo.insert(size, (cost, split));
        size += step;
    }
    memo
}

fn candidate(memo: &Memo, inputs: &[u64], size: u64) -> Rational {
    let input_cost: Rational = inputs
        .iter()
        .map(|s| memo[s].0.clone())
        .sum();
    let den: u64 = inputs.iter().product();
    input_cost * Rational::from_u64(den) / Rational::from_u64(size)
}

fn better(best: &mut Option<(Rational, Vec<u64>)>, cand: Rational, split: &[u64]) {
    match best {
        Some((cost, _)) if *cost <= cand => {}
        _ => *best = Some((cand, split.to_vec())),
    }
}

fn build_tree(scheme: SchemeId, memo: &Memo, size: u64) -> PlanNode {
    if size == 3 {
        return PlanNode::leaf();
    }
    let (cost, split) = &memo[&size];
    PlanNode {
        size,
        cost: cost.clone(),
        success_prob: success_prob(scheme, split),
        children: split
            .iter()
            .map(|&s| build_tree(scheme, memo, s))
            .collect(),
    }
}

/// Cheapest no-recycle fusion plan for `target` under the scheme.
///
/// Errors on unreachable targets, naming the nearest reachable sizes.
/// Ancilla photons carry no cost; only `W_3` primaries are counted.
pub fn dp_norecycle(scheme: SchemeId, target: u64) -> Result<PlanNode, Error> {
    if !is_reachable(scheme, target) {
        return Err(unreachable_error(scheme, target));
    }
    let memo = fill_memo(scheme, target);
    Ok(build_tree(scheme, &memo, target))
}

/// Sizes visited when repeatedly fusing equal-size states, starting from 3:
/// `s -> 3s-3` (three-state), `s -> 2s-2` (basic), `s -> 2s-1` (enhanced).
pub fn equal_size_sequence(scheme: SchemeId, steps: u64) -> Vec<u64> {
    let mut sizes = vec![3u64];
    let mut s = 3u64;
    for _ in 0..steps {
        s = match scheme {
            SchemeId::ThreeState => 3 * s - 3,
            SchemeId::TwoBasic => 2 * s - 2,
            SchemeId::TwoEnhanced => 2 * s - 1,
        };
        sizes.push(s);
    }
    sizes
}

/// Exact no-recycle costs along the equal-size growth sequence, extended
/// until the last size reaches at least `min_last`.
pub fn equal_size_costs(scheme: SchemeId, min_last: u64) -> Vec<(u64, Rational)> {
    let arity = scheme.fusion_arity() as u64;
    let mut out = vec![(3u64, Rational::one())];
    loop {
        let (size, cost) = out.last().unwrap().clone();
        if size >= min_last {
            return out;
        }
        let inputs = vec![size; arity as usize];
        let next_size = fused_size(scheme, &inputs);
        let next_cost = (Rational::from_u64(arity) * cost)
            / success_prob(scheme, &inputs);
        out.push((next_size, next_cost));
    }
}
