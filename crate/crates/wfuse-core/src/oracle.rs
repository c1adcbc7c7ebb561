//! Brute-force statevector simulation of the fusion pipelines.
//!
//! Everything here works on dense amplitude vectors and serves as the
//! independent check for the closed forms in [`crate::analytic`]: W states
//! are built explicitly, the Fredkin gate is applied as a basis permutation,
//! and each fusion gate is simulated as a three-outcome destructive
//! measurement of the two photons it consumes.
//!
//! Fusion-gate success is modeled at the logical level as the even-parity
//! coincidence branch: the amplitude map |HV>, |VH> -> 1/sqrt(2) with both
//! qubits removed, carrying the full orthogonal-sector probability
//! `<P_HV + P_VH>`. The odd-parity coincidence would need a feed-forward
//! phase correction that the schemes under study do not use; for the
//! pipeline states built here, the branch populations and post-states are
//! unaffected by the choice.

use num_complex::Complex64;

use crate::error::Error;
use crate::state::{PartyTag, PureState, MAX_QUBITS};
use crate::types::{GateOutcome, OutcomeClass, Polarization};

/// One branch of a single fusion-gate measurement.
#[derive(Clone, Debug)]
pub struct GateBranch {
    pub outcome: GateOutcome,
    pub probability: f64,
    /// Normalized state of the surviving qubits; `None` for a
    /// zero-probability branch (and for the pathological case of a success
    /// sector with a vanishing even-parity component).
    pub post_state: Option<PureState>,
}

/// One joint branch of a full scheme run: the per-gate outcomes, the outcome
/// class they aggregate to, and the surviving state.
#[derive(Clone, Debug)]
pub struct SchemeBranch {
    pub gates: Vec<GateOutcome>,
    pub class: OutcomeClass,
    pub probability: f64,
    pub post_state: Option<PureState>,
}

/// Builds the n-photon W state `build_w(1) = |V>`.
pub fn build_w(n: u64) -> Result<PureState, Error> {
    PureState::w(n, PartyTag::A)
}

/// Squared overlap of two states of equal qubit count.
pub fn fidelity(x: &PureState, y: &PureState) -> Result<f64, Error> {
    x.fidelity(y)
}

/// Controlled swap: basis states with `control = V` have the `target1` and
/// `target2` qubits exchanged; `control = H` components pass unchanged.
pub fn apply_fredkin(
    state: &PureState,
    control: usize,
    target1: usize,
    target2: usize,
) -> Result<PureState, Error> {
    let n = state.qubit_count();
    for &q in &[control, target1, target2] {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, count: n });
        }
    }
    if control == target1 || control == target2 || target1 == target2 {
        return Err(Error::DuplicateQubits(vec![control, target1, target2]));
    }

    let sc = n - 1 - control;
    let s1 = n - 1 - target1;
    let s2 = n - 1 - target2;
    let mut amps = vec![Complex64::new(0.0, 0.0); state.dim()];
    for (i, &a) in state.amplitudes().iter().enumerate() {
        let j = if (i >> sc) & 1 == 1 && (i >> s1) & 1 != (i >> s2) & 1 {
            i ^ ((1usize << s1) | (1usize << s2))
        } else {
            i
        };
        amps[j] = a;
    }
    PureState::from_amplitudes(amps, state.tags().to_vec())
}

/// Drops the bit at `shift` from `index`, closing the gap.
fn remove_bit(index: usize, shift: usize) -> usize {
    ((index >> (shift + 1)) << shift) | (index & ((1usize << shift) - 1))
}

/// Measures the postselective fusion gate on qubits `q1` and `q2`.
///
/// Returns exactly three branches, in the order Success, Recycle, Failure:
///
/// * Success — the two photons were orthogonally polarized (coincidence
///   detection); both are removed.
/// * Recycle — both H; projected out.
/// * Failure — both V; projected out.
///
/// Branch probabilities sum to 1 exactly.
pub fn fusion_gate_measure(
    state: &PureState,
    q1: usize,
    q2: usize,
) -> Result<Vec<GateBranch>, Error> {
    let n = state.qubit_count();
    for &q in &[q1, q2] {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, count: n });
        }
    }
    if q1 == q2 {
        return Err(Error::DuplicateQubits(vec![q1, q2]));
    }

    let s1 = n - 1 - q1;
    let s2 = n - 1 - q2;
    let (hi, lo) = if s1 > s2 { (s1, s2) } else { (s2, s1) };
    let zero = Complex64::new(0.0, 0.0);
    let rdim = 1usize << (n - 2);
    let mut success = vec![zero; rdim];
    let mut recycle = vec![zero; rdim];
    let mut failure = vec![zero; rdim];
    let (mut p_s, mut p_r, mut p_f) = (0.0f64, 0.0f64, 0.0f64);
    let half = std::f64::consts::FRAC_1_SQRT_2;

    for (i, &a) in state.amplitudes().iter().enumerate() {
        if a == zero {
            continue;
        }
        let reduced = remove_bit(remove_bit(i, hi), lo);
        let p = a.norm_sqr();
        match ((i >> s1) & 1, (i >> s2) & 1) {
            (0, 0) => {
                p_r += p;
                recycle[reduced] = a;
            }
            (1, 1) => {
                p_f += p;
                failure[reduced] = a;
            }
            _ => {
                p_s += p;
                success[reduced] += a * half;
            }
        }
    }

    let mut tags = state.tags().to_vec();
    let (q_hi, q_lo) = if q1 > q2 { (q1, q2) } else { (q2, q1) };
    tags.remove(q_hi);
    tags.remove(q_lo);

    let post = |amps: Vec<Complex64>, prob: f64| -> Option<PureState> {
        if prob <= 0.0 {
            return None;
        }
        PureState::from_amplitudes(amps, tags.clone()).ok()
    };

    Ok(vec![
        GateBranch {
            outcome: GateOutcome::Success,
            probability: p_s,
            post_state: post(success, p_s),
        },
        GateBranch {
            outcome: GateOutcome::Recycle,
            probability: p_r,
            post_state: post(recycle, p_r),
        },
        GateBranch {
            outcome: GateOutcome::Failure,
            probability: p_f,
            post_state: post(failure, p_f),
        },
    ])
}

/// Outcome class of a (FG1, FG2) pair per the scheme's truth table. Pairs
/// that cannot occur (any FG1 failure, and recycle-then-failure) are grouped
/// with Failure; they always carry probability 0.
fn classify_pair(g1: GateOutcome, g2: GateOutcome) -> OutcomeClass {
    use GateOutcome::*;
    match (g1, g2) {
        (Success, Success) => OutcomeClass::Success,
        (Success, Recycle) => OutcomeClass::PartialSuccess,
        (Recycle, Success) => OutcomeClass::PartialRecycle,
        (Recycle, Recycle) => OutcomeClass::Recycle,
        _ => OutcomeClass::Failure,
    }
}

fn check_size(size: u64) -> Result<(), Error> {
    if size < 2 {
        Err(Error::SizeBelowTwo { size })
    } else {
        Ok(())
    }
}

fn check_guard(qubits: u64) -> Result<(), Error> {
    if qubits > MAX_QUBITS as u64 {
        Err(Error::QubitGuard {
            qubits: qubits as usize,
            max: MAX_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// Initial state of the three-state pipeline before the Fredkin gate:
/// `W_n(A) x W_m(B) x |H>(ancilla) x W_t(C)`, with the photon each party
/// sends into the setup sitting last in its group. Returns the state and the
/// qubit indices of modes 1..4.
fn scheme3_initial(n: u64, m: u64, t: u64) -> Result<(PureState, [usize; 4]), Error> {
    for &s in &[n, m, t] {
        check_size(s)?;
    }
    check_guard(n + m + t + 1)?;

    let mut alice = PureState::w(n, PartyTag::A)?;
    alice.set_tag(n as usize - 1, PartyTag::Mode1);
    let mut bob = PureState::w(m, PartyTag::B)?;
    bob.set_tag(m as usize - 1, PartyTag::Mode2);
    let ancilla = PureState::single(Polarization::H, PartyTag::Mode3);
    let mut charlie = PureState::w(t, PartyTag::C)?;
    charlie.set_tag(t as usize - 1, PartyTag::Mode4);

    let state = alice.tensor(&bob)?.tensor(&ancilla)?.tensor(&charlie)?;
    let (n, m, t) = (n as usize, m as usize, t as usize);
    let modes = [n - 1, n + m - 1, n + m, n + m + t];
    Ok((state, modes))
}

/// Runs the full three-state scheme: Fredkin(control = mode 1, targets =
/// modes 2 and 3), then fusion gates on modes (1', 2') and (3', 4').
///
/// Returns all nine joint (FG1, FG2) branches in lexicographic gate order
/// (S, R, F per gate). Branches the ancilla makes impossible have
/// probability exactly 0. Surviving qubits keep the party order a, b, c.
pub fn run_scheme3(n: u64, m: u64, t: u64) -> Result<Vec<SchemeBranch>, Error> {
    let (initial, [mode1, mode2, mode3, mode4]) = scheme3_initial(n, m, t)?;
    let swapped = apply_fredkin(&initial, mode1, mode2, mode3)?;
    let fg1 = fusion_gate_measure(&swapped, mode1, mode2)?;

    let mut branches = Vec::with_capacity(9);
    for b1 in fg1 {
        match b1.post_state {
            Some(ref mid) if b1.probability > 0.0 => {
                // modes 1 and 2 are gone; modes 3 and 4 sit two places lower
                let fg2 = fusion_gate_measure(mid, mode3 - 2, mode4 - 2)?;
                for b2 in fg2 {
                    branches.push(SchemeBranch {
                        gates: vec![b1.outcome, b2.outcome],
                        class: classify_pair(b1.outcome, b2.outcome),
                        probability: b1.probability * b2.probability,
                        post_state: b2.post_state,
                    });
                }
            }
            _ => {
                for g2 in GateOutcome::ALL {
                    branches.push(SchemeBranch {
                        gates: vec![b1.outcome, g2],
                        class: classify_pair(b1.outcome, g2),
                        probability: 0.0,
                        post_state: None,
                    });
                }
            }
        }
    }
    Ok(branches)
}

/// Runs the plain two-state fusion gate on one photon from each of
/// `W_n(A)` and `W_m(B)`. Three branches: S, R, F.
pub fn run_scheme2_basic(n: u64, m: u64) -> Result<Vec<SchemeBranch>, Error> {
    check_size(n)?;
    check_size(m)?;
    check_guard(n + m)?;

    let mut alice = PureState::w(n, PartyTag::A)?;
    alice.set_tag(n as usize - 1, PartyTag::Mode1);
    let mut bob = PureState::w(m, PartyTag::B)?;
    bob.set_tag(m as usize - 1, PartyTag::Mode2);
    let state = alice.tensor(&bob)?;

    let gate = fusion_gate_measure(&state, n as usize - 1, (n + m) as usize - 1)?;
    Ok(gate
        .into_iter()
        .map(|b| SchemeBranch {
            class: match b.outcome {
                GateOutcome::Success => OutcomeClass::Success,
                GateOutcome::Recycle => OutcomeClass::Recycle,
                GateOutcome::Failure => OutcomeClass::Failure,
            },
            gates: vec![b.outcome],
            probability: b.probability,
            post_state: b.post_state,
        })
        .collect())
}

/// Runs the enhanced two-state scheme: Alice's photon controls a Fredkin
/// gate swapping Bob's photon with an ancilla H photon, then one fusion gate
/// consumes modes 1' and 2'.
///
/// The ancilla-mode photon is never detected: it survives in every branch
/// (as the last qubit) and is absorbed into the enlarged W state on success.
/// The failure branch has probability exactly 0.
pub fn run_scheme2_enhanced(n: u64, m: u64) -> Result<Vec<SchemeBranch>, Error> {
    check_size(n)?;
    check_size(m)?;
    check_guard(n + m + 1)?;

    let mut alice = PureState::w(n, PartyTag::A)?;
    alice.set_tag(n as usize - 1, PartyTag::Mode1);
    let mut bob = PureState::w(m, PartyTag::B)?;
    bob.set_tag(m as usize - 1, PartyTag::Mode2);
    let ancilla = PureState::single(Polarization::H, PartyTag::Mode3);
    let state = alice.tensor(&bob)?.tensor(&ancilla)?;

    let (n, m) = (n as usize, m as usize);
    let swapped = apply_fredkin(&state, n - 1, n + m - 1, n + m)?;
    let gate = fusion_gate_measure(&swapped, n - 1, n + m - 1)?;
    Ok(gate
        .into_iter()
        .map(|b| SchemeBranch {
            class: match b.outcome {
                GateOutcome::Success => OutcomeClass::Success,
                GateOutcome::Recycle => OutcomeClass::Recycle,
                GateOutcome::Failure => OutcomeClass::Failure,
            },
            gates: vec![b.outcome],
            probability: b.probability,
            post_state: b.post_state,
        })
        .collect())
}

/// Population of every polarization pattern on the given qubits, in
/// lexicographic pattern order (H before V). The probabilities sum to 1.
pub fn sector_probs(
    state: &PureState,
    qubits: &[usize],
) -> Result<Vec<(Vec<Polarization>, f64)>, Error> {
    let n = state.qubit_count();
    for &q in qubits {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, count: n });
        }
    }
    let k = qubits.len();
    let mut probs = vec![0.0f64; 1usize << k];
    for (i, a) in state.amplitudes().iter().enumerate() {
        if *a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut pattern = 0usize;
        for &q in qubits {
            pattern = (pattern << 1) | ((i >> (n - 1 - q)) & 1);
        }
        probs[pattern] += a.norm_sqr();
    }
    Ok(probs
        .into_iter()
        .enumerate()
        .map(|(pattern, p)| {
            let pols = (0..k)
                .map(|j| Polarization::from_bit((pattern >> (k - 1 - j)) & 1))
                .collect();
            (pols, p)
        })
        .collect())
}

/// Probabilities of the eight input patterns of the three-state scheme: the
/// polarizations of the photons in modes 1, 2, 3 and 4 before the Fredkin
/// gate (mode 3, the ancilla, is always H). Returned in lexicographic order
/// over (mode 1, mode 2, mode 4) — the row order of the scheme's truth
/// table.
pub fn scheme3_input_probs(n: u64, m: u64, t: u64) -> Result<Vec<([Polarization; 4], f64)>, Error> {
    let (initial, [mode1, mode2, _, mode4]) = scheme3_initial(n, m, t)?;
    let sectors = sector_probs(&initial, &[mode1, mode2, mode4])?;
    Ok(sectors
        .into_iter()
        .map(|(pols, p)| ([pols[0], pols[1], Polarization::H, pols[2]], p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::{Block, BlockState};
    use proptest::prelude::*;

    fn approx(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-12, "{a} != {b}");
    }

    #[test]
    fn build_w_small_cases() {
        let w1 = build_w(1).unwrap();
        assert!((w1.amp(1).re - 1.0).abs() < 1e-15);

        let w3 = build_w(3).unwrap();
        let amp = 1.0 / 3f64.sqrt();
        for idx in [0b001, 0b010, 0b100] {
            assert!((w3.amp(idx).re - amp).abs() < 1e-15);
        }
        assert!(build_w(0).is_err());
    }

    /// The W state satisfies the recursive decomposition
    /// `sqrt(n) W_n = AllH(n-1) x V + sqrt(n-1) W_{n-1} x H`.
    #[test]
    fn build_w_recursive_decomposition() {
        for n in 2..=10u64 {
            let prev = build_w(n - 1).unwrap();
            let h = PureState::single(Polarization::H, PartyTag::A);
            let v = PureState::single(Polarization::V, PartyTag::A);
            let all_h = PureState::all_h(n as usize - 1, PartyTag::A).unwrap();

            let left = all_h.tensor(&v).unwrap();
            let right = prev.tensor(&h).unwrap();
            let scale = 1.0 / (n as f64).sqrt();
            let weight = ((n - 1) as f64).sqrt();
            let amps: Vec<Complex64> = (0..left.dim())
                .map(|i| scale * (left.amp(i) + weight * right.amp(i)))
                .collect();
            let assembled = PureState::from_amplitudes(amps, left.tags().to_vec()).unwrap();
            approx(assembled.fidelity(&build_w(n).unwrap()).unwrap(), 1.0);
        }
    }

    #[test]
    fn fredkin_swaps_when_control_is_v() {
        // |V H V> -> |V V H>
        let v = PureState::single(Polarization::V, PartyTag::A);
        let h = PureState::single(Polarization::H, PartyTag::A);
        let state = v.tensor(&h).unwrap().tensor(&v).unwrap();
        let out = apply_fredkin(&state, 0, 1, 2).unwrap();
        assert!((out.amp(0b110).re - 1.0).abs() < 1e-15);

        // control H: unchanged
        let state = h.tensor(&h).unwrap().tensor(&v).unwrap();
        let out = apply_fredkin(&state, 0, 1, 2).unwrap();
        assert!((out.amp(0b001).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fredkin_rejects_bad_indices() {
        let state = PureState::all_h(3, PartyTag::A).unwrap();
        assert!(matches!(
            apply_fredkin(&state, 0, 1, 3),
            Err(Error::QubitOutOfRange { .. })
        ));
        assert!(matches!(
            apply_fredkin(&state, 0, 1, 1),
            Err(Error::DuplicateQubits(_))
        ));
    }

    proptest! {
        /// Applied twice, the Fredkin gate is the identity, and one
        /// application preserves the norm.
        #[test]
        fn fredkin_is_an_involution(seed in proptest::collection::vec(-1.0f64..1.0, 64)) {
            let amps: Vec<Complex64> = seed
                .chunks(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect();
            prop_assume!(amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-6);
            let state = PureState::from_amplitudes(amps, vec![PartyTag::A; 5]).unwrap();
            let once = apply_fredkin(&state, 1, 3, 4).unwrap();
            prop_assert!((once.norm_sqr() - 1.0).abs() < 1e-12);
            let twice = apply_fredkin(&once, 1, 3, 4).unwrap();
            prop_assert!((twice.fidelity(&state).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fusion_of_hv_is_forced_success() {
        let h = PureState::single(Polarization::H, PartyTag::A);
        let v = PureState::single(Polarization::V, PartyTag::B);
        let state = h.tensor(&v).unwrap();
        let branches = fusion_gate_measure(&state, 0, 1).unwrap();
        assert_eq!(branches.len(), 3);
        approx(branches[0].probability, 1.0);
        let post = branches[0].post_state.as_ref().unwrap();
        assert_eq!(post.qubit_count(), 0);
        approx(post.norm_sqr(), 1.0);
        // the other two branches are empty
        approx(branches[1].probability, 0.0);
        assert!(branches[1].post_state.is_none());
        approx(branches[2].probability, 0.0);
        assert!(branches[2].post_state.is_none());
    }

    #[test]
    fn fusion_of_two_bell_pairs() {
        // W_2 x W_2, fusing the second photon of each.
        let a = build_w(2).unwrap();
        let b = build_w(2).unwrap();
        let state = a.tensor(&b).unwrap();
        let branches = fusion_gate_measure(&state, 1, 3).unwrap();

        approx(branches[0].probability, 0.5);
        let w2 = build_w(2).unwrap();
        approx(
            branches[0].post_state.as_ref().unwrap().fidelity(&w2).unwrap(),
            1.0,
        );

        approx(branches[1].probability, 0.25);
        let vv = PureState::single(Polarization::V, PartyTag::A)
            .tensor(&PureState::single(Polarization::V, PartyTag::B))
            .unwrap();
        approx(
            branches[1].post_state.as_ref().unwrap().fidelity(&vv).unwrap(),
            1.0,
        );

        approx(branches[2].probability, 0.25);
    }

    #[test]
    fn fusion_of_two_w3_grows_a_w4() {
        let state = build_w(3).unwrap().tensor(&build_w(3).unwrap()).unwrap();
        let branches = fusion_gate_measure(&state, 2, 5).unwrap();
        approx(branches[0].probability, 4.0 / 9.0);
        let w4 = build_w(4).unwrap();
        approx(
            branches[0].post_state.as_ref().unwrap().fidelity(&w4).unwrap(),
            1.0,
        );
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        approx(total, 1.0);
    }

    #[test]
    fn scheme3_branch_probabilities_sum_to_one() {
        for (n, m, t) in [(2, 2, 2), (3, 3, 3), (2, 3, 4), (4, 4, 4)] {
            let branches = run_scheme3(n, m, t).unwrap();
            assert_eq!(branches.len(), 9);
            let total: f64 = branches.iter().map(|b| b.probability).sum();
            approx(total, 1.0);
            for b in &branches {
                if let Some(post) = &b.post_state {
                    approx(post.norm_sqr(), 1.0);
                }
            }
        }
    }

    #[test]
    fn scheme3_class_probabilities_at_3_3_3() {
        let branches = run_scheme3(3, 3, 3).unwrap();
        let class_prob = |class: OutcomeClass| -> f64 {
            branches
                .iter()
                .filter(|b| b.class == class)
                .map(|b| b.probability)
                .sum()
        };
        approx(class_prob(OutcomeClass::Success), 6.0 / 27.0);
        approx(class_prob(OutcomeClass::Recycle), 8.0 / 27.0);
        approx(class_prob(OutcomeClass::PartialRecycle), 4.0 / 27.0);
        approx(class_prob(OutcomeClass::PartialSuccess), 8.0 / 27.0);
        approx(class_prob(OutcomeClass::Failure), 1.0 / 27.0);
    }

    #[test]
    fn scheme3_success_state_is_a_w_state() {
        // (3,3,3): success branch has fidelity 1 with W_6
        let branches = run_scheme3(3, 3, 3).unwrap();
        let success = branches
            .iter()
            .find(|b| b.gates == vec![GateOutcome::Success, GateOutcome::Success])
            .unwrap();
        let w6 = build_w(6).unwrap();
        approx(
            success.post_state.as_ref().unwrap().fidelity(&w6).unwrap(),
            1.0,
        );

        // (2,2,2): Bell-state inputs fuse into W_3 with probability 3/8
        let branches = run_scheme3(2, 2, 2).unwrap();
        let success = branches
            .iter()
            .find(|b| b.class == OutcomeClass::Success)
            .unwrap();
        approx(success.probability, 3.0 / 8.0);
        let w3 = build_w(3).unwrap();
        approx(
            success.post_state.as_ref().unwrap().fidelity(&w3).unwrap(),
            1.0,
        );
    }

    #[test]
    fn scheme3_impossible_pairs_have_zero_probability() {
        use GateOutcome::*;
        for n in 2..=4 {
            for m in 2..=4 {
                for t in 2..=4 {
                    let branches = run_scheme3(n, m, t).unwrap();
                    for b in &branches {
                        let pair = (b.gates[0], b.gates[1]);
                        if matches!(pair, (Failure, _) | (Recycle, Failure)) {
                            assert_eq!(b.probability, 0.0, "pair {pair:?} at ({n},{m},{t})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn scheme3_sf_branch_leaves_all_photons_h() {
        let branches = run_scheme3(3, 4, 2).unwrap();
        let sf = branches
            .iter()
            .find(|b| b.gates == vec![GateOutcome::Success, GateOutcome::Failure])
            .unwrap();
        let all_h = BlockState::new(vec![Block::AllH(2), Block::AllH(3), Block::AllH(1)])
            .unwrap()
            .materialize()
            .unwrap();
        approx(
            sf.post_state.as_ref().unwrap().fidelity(&all_h).unwrap(),
            1.0,
        );
    }

    #[test]
    fn scheme3_guard_and_size_errors() {
        assert!(matches!(run_scheme3(1, 3, 3), Err(Error::SizeBelowTwo { .. })));
        assert!(matches!(run_scheme3(8, 8, 8), Err(Error::QubitGuard { .. })));
    }

    #[test]
    fn basic_two_state_probabilities() {
        let branches = run_scheme2_basic(3, 3).unwrap();
        approx(branches[0].probability, 4.0 / 9.0); // S
        approx(branches[1].probability, 4.0 / 9.0); // R
        approx(branches[2].probability, 1.0 / 9.0); // F
        let w4 = build_w(4).unwrap();
        approx(
            branches[0].post_state.as_ref().unwrap().fidelity(&w4).unwrap(),
            1.0,
        );
    }

    #[test]
    fn enhanced_two_state_never_fails() {
        for n in 2..=4u64 {
            for m in 2..=4u64 {
                let branches = run_scheme2_enhanced(n, m).unwrap();
                let failure = branches
                    .iter()
                    .find(|b| b.class == OutcomeClass::Failure)
                    .unwrap();
                assert_eq!(failure.probability, 0.0);
                let total: f64 = branches.iter().map(|b| b.probability).sum();
                approx(total, 1.0);
            }
        }
    }

    #[test]
    fn enhanced_two_state_success_absorbs_the_ancilla() {
        let branches = run_scheme2_enhanced(3, 3).unwrap();
        let success = &branches[0];
        approx(success.probability, 5.0 / 9.0);
        let w5 = build_w(5).unwrap();
        approx(
            success.post_state.as_ref().unwrap().fidelity(&w5).unwrap(),
            1.0,
        );
        // recycle branch keeps W_{n-1} x W_{m-1} and the untouched ancilla
        let recycle = &branches[1];
        approx(recycle.probability, 4.0 / 9.0);
        let expected = BlockState::new(vec![Block::W(2), Block::W(2), Block::AllH(1)])
            .unwrap()
            .materialize()
            .unwrap();
        approx(
            recycle.post_state.as_ref().unwrap().fidelity(&expected).unwrap(),
            1.0,
        );
    }

    #[test]
    fn input_sector_probs_match_the_product_form() {
        let (n, m, t) = (3u64, 4, 5);
        let sectors = scheme3_input_probs(n, m, t).unwrap();
        assert_eq!(sectors.len(), 8);
        let den = (n * m * t) as f64;
        let weight = |p: Polarization, s: u64| if p == Polarization::H { (s - 1) as f64 } else { 1.0 };
        let mut total = 0.0;
        for (pattern, prob) in &sectors {
            assert_eq!(pattern[2], Polarization::H);
            let expected = weight(pattern[0], n) * weight(pattern[1], m) * weight(pattern[3], t) / den;
            approx(*prob, expected);
            total += prob;
        }
        approx(total, 1.0);
    }
}
