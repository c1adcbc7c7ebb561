//! Shared domain vocabulary: polarizations, gate outcomes, outcome classes
//! and fusion scheme identifiers.

use std::fmt;
use std::str::FromStr;

/// Photon polarization. `H` encodes logical |0>, `V` encodes logical |1>.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::H, Polarization::V];

    /// Computational-basis bit: H -> 0, V -> 1.
    pub fn bit(self) -> usize {
        match self {
            Polarization::H => 0,
            Polarization::V => 1,
        }
    }

    pub fn from_bit(bit: usize) -> Polarization {
        if bit == 0 {
            Polarization::H
        } else {
            Polarization::V
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarization::H => write!(f, "H"),
            Polarization::V => write!(f, "V"),
        }
    }
}

/// Outcome of a single postselective fusion gate.
///
/// `Success` is the coincidence-detection branch (orthogonally polarized
/// inputs), `Recycle` the both-H branch, `Failure` the both-V branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateOutcome {
    Success,
    Recycle,
    Failure,
}

impl GateOutcome {
    pub const ALL: [GateOutcome; 3] = [
        GateOutcome::Success,
        GateOutcome::Recycle,
        GateOutcome::Failure,
    ];
}

impl fmt::Display for GateOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateOutcome::Success => write!(f, "S"),
            GateOutcome::Recycle => write!(f, "R"),
            GateOutcome::Failure => write!(f, "F"),
        }
    }
}

/// Joint outcome class of a whole fusion scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OutcomeClass {
    /// All parties fused into one larger W state.
    Success,
    /// Two parties fused, the third keeps a smaller W state.
    PartialSuccess,
    /// Two parties keep smaller W states, the third is destroyed.
    PartialRecycle,
    /// Every party keeps a W state one photon smaller.
    Recycle,
    /// All entanglement lost; the surviving photons are all H.
    Failure,
}

impl OutcomeClass {
    pub const ALL: [OutcomeClass; 5] = [
        OutcomeClass::Success,
        OutcomeClass::PartialSuccess,
        OutcomeClass::PartialRecycle,
        OutcomeClass::Recycle,
        OutcomeClass::Failure,
    ];
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeClass::Success => write!(f, "S"),
            OutcomeClass::PartialSuccess => write!(f, "PS"),
            OutcomeClass::PartialRecycle => write!(f, "PR"),
            OutcomeClass::Recycle => write!(f, "R"),
            OutcomeClass::Failure => write!(f, "F"),
        }
    }
}

/// Result label of one truth-table row.
///
/// Success rows carry bookkeeping sub-labels S1/S2/S3; everything else maps
/// one-to-one onto an [`OutcomeClass`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowResult {
    Recycle,
    PartialRecycle,
    PartialSuccess,
    Success1,
    Success2,
    Success3,
    Failure,
}

impl RowResult {
    pub fn class(self) -> OutcomeClass {
        match self {
            RowResult::Recycle => OutcomeClass::Recycle,
            RowResult::PartialRecycle => OutcomeClass::PartialRecycle,
            RowResult::PartialSuccess => OutcomeClass::PartialSuccess,
            RowResult::Success1 | RowResult::Success2 | RowResult::Success3 => {
                OutcomeClass::Success
            }
            RowResult::Failure => OutcomeClass::Failure,
        }
    }
}

impl fmt::Display for RowResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowResult::Recycle => write!(f, "R"),
            RowResult::PartialRecycle => write!(f, "PR"),
            RowResult::PartialSuccess => write!(f, "PS"),
            RowResult::Success1 => write!(f, "S1"),
            RowResult::Success2 => write!(f, "S2"),
            RowResult::Success3 => write!(f, "S3"),
            RowResult::Failure => write!(f, "F"),
        }
    }
}

/// Which fusion scheme is being simulated or planned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeId {
    /// Three W states fused at once: Fredkin gate, ancilla H photon and two
    /// fusion gates.
    ThreeState,
    /// The plain two-state fusion gate.
    TwoBasic,
    /// The two-state gate augmented with a Fredkin gate and an ancilla H
    /// photon, which removes the failure outcome.
    TwoEnhanced,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [SchemeId::ThreeState, SchemeId::TwoBasic, SchemeId::TwoEnhanced];

    /// How many W states one fusion attempt consumes.
    pub fn fusion_arity(self) -> usize {
        match self {
            SchemeId::ThreeState => 3,
            SchemeId::TwoBasic | SchemeId::TwoEnhanced => 2,
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeId::ThreeState => write!(f, "three"),
            SchemeId::TwoBasic => write!(f, "two-basic"),
            SchemeId::TwoEnhanced => write!(f, "two-enhanced"),
        }
    }
}

impl FromStr for SchemeId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "three" => Ok(SchemeId::ThreeState),
            "two-basic" => Ok(SchemeId::TwoBasic),
            "two-enhanced" => Ok(SchemeId::TwoEnhanced),
            other => Err(format!(
                "unknown scheme '{other}' (expected three, two-basic or two-enhanced)"
            )),
        }
    }
}
