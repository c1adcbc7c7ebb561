//! Dense statevector over polarization qubits.
//!
//! Basis ordering is fixed and documented here once: amplitudes are indexed
//! big-endian over qubit position, with qubit 0 as the most significant bit,
//! and H = 0, V = 1. So for three qubits, index `0b011` is the basis state
//! |H V V>.

use std::fmt;

use num_complex::Complex64;

use crate::error::Error;
use crate::types::Polarization;

/// Largest number of qubits the dense simulator will hold (2^24 amplitudes).
pub const MAX_QUBITS: usize = 24;

/// Which spatial slot of the fusion setup a qubit belongs to: a remaining
/// photon of one of the parties, or one of the four numbered input modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartyTag {
    A,
    B,
    C,
    Mode1,
    Mode2,
    Mode3,
    Mode4,
}

impl fmt::Display for PartyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartyTag::A => write!(f, "a"),
            PartyTag::B => write!(f, "b"),
            PartyTag::C => write!(f, "c"),
            PartyTag::Mode1 => write!(f, "mode1"),
            PartyTag::Mode2 => write!(f, "mode2"),
            PartyTag::Mode3 => write!(f, "mode3"),
            PartyTag::Mode4 => write!(f, "mode4"),
        }
    }
}

/// A pure quantum state of `n` polarization qubits as a dense complex
/// amplitude vector of length `2^n`, with a per-qubit [`PartyTag`].
///
/// All constructors and operations keep the squared norm within `1e-12` of 1
/// (a 0-qubit state is the scalar 1).
#[derive(Clone, Debug)]
pub struct PureState {
    amps: Vec<Complex64>,
    tags: Vec<PartyTag>,
}

impl PureState {
    /// The 0-qubit unit scalar, the state left when every photon has been
    /// detected.
    pub fn scalar_unit() -> PureState {
        PureState {
            amps: vec![Complex64::new(1.0, 0.0)],
            tags: Vec::new(),
        }
    }

    /// A single photon of the given polarization.
    pub fn single(p: Polarization, tag: PartyTag) -> PureState {
        let mut amps = vec![Complex64::new(0.0, 0.0); 2];
        amps[p.bit()] = Complex64::new(1.0, 0.0);
        PureState {
            amps,
            tags: vec![tag],
        }
    }

    /// `count` photons, all H-polarized. `count = 0` gives the unit scalar.
    pub fn all_h(count: usize, tag: PartyTag) -> Result<PureState, Error> {
        Self::guard(count)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << count];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(PureState {
            amps,
            tags: vec![tag; count],
        })
    }

    /// The n-photon W state: the equal superposition of the n basis states
    /// with exactly one V photon, amplitude `1/sqrt(n)` each. `w(1, _)` is a
    /// single V photon.
    pub fn w(n: u64, tag: PartyTag) -> Result<PureState, Error> {
        if n == 0 {
            return Err(Error::EmptyWState);
        }
        let n = n as usize;
        Self::guard(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
        let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        for qubit in 0..n {
            amps[1usize << (n - 1 - qubit)] = amp;
        }
        Ok(PureState {
            amps,
            tags: vec![tag; n],
        })
    }

    /// Builds a state from raw amplitudes, normalizing them. Errors when the
    /// vector length is not `2^tags.len()` or the norm is zero.
    pub fn from_amplitudes(amps: Vec<Complex64>, tags: Vec<PartyTag>) -> Result<PureState, Error> {
        Self::guard(tags.len())?;
        if amps.len() != 1usize << tags.len() {
            return Err(Error::QubitCountMismatch {
                left: amps.len(),
                right: 1usize << tags.len(),
            });
        }
        let state = PureState { amps, tags };
        state.normalized().ok_or(Error::ZeroNorm)
    }

    fn guard(qubits: usize) -> Result<(), Error> {
        if qubits > MAX_QUBITS {
            Err(Error::QubitGuard {
                qubits,
                max: MAX_QUBITS,
            })
        } else {
            Ok(())
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.tags.len()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn tags(&self) -> &[PartyTag] {
        &self.tags
    }

    pub fn set_tag(&mut self, qubit: usize, tag: PartyTag) {
        self.tags[qubit] = tag;
    }

    /// Polarization of `qubit` in basis state `index` (big-endian, H = 0).
    pub fn polarization_at(&self, index: usize, qubit: usize) -> Polarization {
        let shift = self.qubit_count() - 1 - qubit;
        Polarization::from_bit((index >> shift) & 1)
    }

    /// Tensor product; `self`'s qubits come first (more significant).
    pub fn tensor(&self, other: &PureState) -> Result<PureState, Error> {
        let total = self.qubit_count() + other.qubit_count();
        Self::guard(total)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim() * other.dim()];
        for (i, &a) in self.amps.iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let base = i * other.dim();
            for (j, &b) in other.amps.iter().enumerate() {
                amps[base + j] = a * b;
            }
        }
        let mut tags = self.tags.clone();
        tags.extend_from_slice(&other.tags);
        Ok(PureState { amps, tags })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Rescales to unit norm; `None` for the zero vector.
    pub fn normalized(mut self) -> Option<PureState> {
        let norm = self.norm_sqr().sqrt();
        if norm <= 0.0 {
            return None;
        }
        for a in &mut self.amps {
            *a /= norm;
        }
        Some(self)
    }

    /// Squared overlap `|<self|other>|^2`. Tags are ignored; the qubit counts
    /// must match.
    pub fn fidelity(&self, other: &PureState) -> Result<f64, Error> {
        if self.qubit_count() != other.qubit_count() {
            return Err(Error::QubitCountMismatch {
                left: self.qubit_count(),
                right: other.qubit_count(),
            });
        }
        let overlap: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(overlap.norm_sqr())
    }
}
