//! Closed-form truth tables and outcome distributions.
//!
//! For every scheme the outcome probabilities are products of simple size
//! factors divided by the product of the input sizes; this module writes
//! those down directly as exact rationals, together with the symbolic block
//! structure of each post-state. Nothing here touches a statevector, so the
//! formulas stay valid for sizes far beyond the simulator guard — their
//! correctness is pinned to the oracle by the equivalence test suite.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::block::{Block, BlockState};
use crate::error::Error;
use crate::rational::Rational;
use crate::types::{GateOutcome, OutcomeClass, Polarization, RowResult};

/// One row of the three-state scheme's truth table: an input polarization
/// pattern on modes 1–4, the pattern after the Fredkin gate, the pair of
/// fusion-gate results it produces, and its exact probability.
#[derive(Clone, Debug, PartialEq)]
pub struct TruthTableRow {
    pub input: [Polarization; 4],
    pub throughput: [Polarization; 4],
    pub gates: (GateOutcome, GateOutcome),
    pub result: RowResult,
    pub probability: Rational,
}

/// Aggregated outcome of a scheme run: class, exact probability, and the
/// block structure of the surviving photons.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeRecord {
    pub class: OutcomeClass,
    pub probability: Rational,
    pub result_blocks: BlockState,
}

fn check_size(size: u64) -> Result<(), Error> {
    if size < 2 {
        Err(Error::SizeBelowTwo { size })
    } else {
        Ok(())
    }
}

/// Exact `(product of nums) / (product of dens)`.
fn frac(nums: &[u64], dens: &[u64]) -> Rational {
    let num = nums.iter().fold(BigInt::from(1u8), |acc, &x| acc * x);
    let den = dens.iter().fold(BigInt::from(1u8), |acc, &x| acc * x);
    Rational::from_big(BigRational::new(num, den))
}

/// Polarization pattern on modes 1'–4' after the Fredkin gate: a V photon in
/// mode 1 swaps the contents of modes 2 and 3.
fn fredkin_throughput(input: [Polarization; 4]) -> [Polarization; 4] {
    if input[0] == Polarization::V {
        [input[0], input[2], input[1], input[3]]
    } else {
        input
    }
}

fn gate_of(a: Polarization, b: Polarization) -> GateOutcome {
    match (a, b) {
        (Polarization::H, Polarization::H) => GateOutcome::Recycle,
        (Polarization::V, Polarization::V) => GateOutcome::Failure,
        _ => GateOutcome::Success,
    }
}

/// The eight-row truth table of the three-state scheme, in input pattern
/// order (H before V over modes 1, 2, 4; mode 3 is always H).
///
/// Row probabilities are the exact products
/// `{(n-1)(m-1)(t-1), (n-1)(m-1), (n-1)(t-1), (n-1), (m-1)(t-1), (m-1), (t-1), 1} / nmt`
/// and sum to exactly 1.
pub fn truth_table3(n: u64, m: u64, t: u64) -> Result<Vec<TruthTableRow>, Error> {
    for &s in &[n, m, t] {
        check_size(s)?;
    }
    let weight = |p: Polarization, size: u64| if p == Polarization::H { size - 1 } else { 1 };

    let mut rows = Vec::with_capacity(8);
    let mut successes = 0usize;
    for p1 in Polarization::BOTH {
        for p2 in Polarization::BOTH {
            for p4 in Polarization::BOTH {
                let input = [p1, p2, Polarization::H, p4];
                let probability =
                    frac(&[weight(p1, n), weight(p2, m), weight(p4, t)], &[n, m, t]);
                let throughput = fredkin_throughput(input);
                let g1 = gate_of(throughput[0], throughput[1]);
                let g2 = gate_of(throughput[2], throughput[3]);
                let result = match (g1, g2) {
                    (GateOutcome::Recycle, GateOutcome::Recycle) => RowResult::Recycle,
                    (GateOutcome::Recycle, GateOutcome::Success) => RowResult::PartialRecycle,
                    (GateOutcome::Success, GateOutcome::Recycle) => RowResult::PartialSuccess,
                    (GateOutcome::Success, GateOutcome::Success) => {
                        successes += 1;
                        match successes {
                            1 => RowResult::Success1,
                            2 => RowResult::Success2,
                            _ => RowResult::Success3,
                        }
                    }
                    (GateOutcome::Success, GateOutcome::Failure) => RowResult::Failure,
                    pair => unreachable!("gate pair {pair:?} cannot occur with an H ancilla"),
                };
                rows.push(TruthTableRow {
                    input,
                    throughput,
                    gates: (g1, g2),
                    result,
                    probability,
                });
            }
        }
    }
    Ok(rows)
}

/// The five outcome classes of the three-state scheme with their exact
/// probabilities and surviving block structures.
///
/// In record order: S `(n+m+t-3)/nmt -> W(n+m+t-3)`, R
/// `(n-1)(m-1)(t-1)/nmt -> W(n-1) x W(m-1) x W(t-1)`, PR
/// `(n-1)(m-1)/nmt -> W(n-1) x W(m-1) x AllH(t-1)`, PS
/// `(n+m-2)(t-1)/nmt -> W(n+m-2) x W(t-1)`, F `1/nmt -> all H`.
pub fn outcomes3(n: u64, m: u64, t: u64) -> Result<Vec<OutcomeRecord>, Error> {
    for &s in &[n, m, t] {
        check_size(s)?;
    }
    let record = |class, probability, blocks: Vec<Block>| -> Result<OutcomeRecord, Error> {
        Ok(OutcomeRecord {
            class,
            probability,
            result_blocks: BlockState::new(blocks)?,
        })
    };
    Ok(vec![
        record(
            OutcomeClass::Success,
            frac(&[n + m + t - 3], &[n, m, t]),
            vec![Block::W(n + m + t - 3)],
        )?,
        record(
            OutcomeClass::Recycle,
            frac(&[n - 1, m - 1, t - 1], &[n, m, t]),
            vec![Block::W(n - 1), Block::W(m - 1), Block::W(t - 1)],
        )?,
        record(
            OutcomeClass::PartialRecycle,
            frac(&[n - 1, m - 1], &[n, m, t]),
            vec![Block::W(n - 1), Block::W(m - 1), Block::AllH(t - 1)],
        )?,
        record(
            OutcomeClass::PartialSuccess,
            frac(&[n + m - 2, t - 1], &[n, m, t]),
            vec![Block::W(n + m - 2), Block::W(t - 1)],
        )?,
        record(
            OutcomeClass::Failure,
            frac(&[1], &[n, m, t]),
            vec![Block::AllH(n - 1), Block::AllH(m - 1), Block::AllH(t - 1)],
        )?,
    ])
}

/// Outcome distribution of the plain two-state fusion gate:
/// R `(n-1)(m-1)/nm`, S `(n+m-2)/nm`, F `1/nm`.
pub fn outcomes2_basic(n: u64, m: u64) -> Result<Vec<OutcomeRecord>, Error> {
    check_size(n)?;
    check_size(m)?;
    Ok(vec![
        OutcomeRecord {
            class: OutcomeClass::Recycle,
            probability: frac(&[n - 1, m - 1], &[n, m]),
            result_blocks: BlockState::new(vec![Block::W(n - 1), Block::W(m - 1)])?,
        },
        OutcomeRecord {
            class: OutcomeClass::Success,
            probability: frac(&[n + m - 2], &[n, m]),
            result_blocks: BlockState::new(vec![Block::W(n + m - 2)])?,
        },
        OutcomeRecord {
            class: OutcomeClass::Failure,
            probability: frac(&[1], &[n, m]),
            result_blocks: BlockState::new(vec![Block::AllH(n - 1), Block::AllH(m - 1)])?,
        },
    ])
}

/// Outcome distribution of the Fredkin-enhanced two-state scheme:
/// R `(n-1)(m-1)/nm`, S `(n+m-1)/nm` (the ancilla photon joins the W
/// state). There is no failure record; the two probabilities sum to 1.
pub fn outcomes2_enhanced(n: u64, m: u64) -> Result<Vec<OutcomeRecord>, Error> {
    check_size(n)?;
    check_size(m)?;
    Ok(vec![
        OutcomeRecord {
            class: OutcomeClass::Recycle,
            probability: frac(&[n - 1, m - 1], &[n, m]),
            result_blocks: BlockState::new(vec![Block::W(n - 1), Block::W(m - 1)])?,
        },
        OutcomeRecord {
            class: OutcomeClass::Success,
            probability: frac(&[n + m - 1], &[n, m]),
            result_blocks: BlockState::new(vec![Block::W(n + m - 1)])?,
        },
    ])
}
