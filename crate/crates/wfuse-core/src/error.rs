//! Crate-wide error type.

use thiserror::Error;

use crate::types::SchemeId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("cannot normalize a zero state vector")]
    ZeroNorm,

    #[error("a W state needs at least one photon")]
    EmptyWState,

    #[error("qubit index {index} out of range for a {count}-qubit state")]
    QubitOutOfRange { index: usize, count: usize },

    #[error("qubit indices must be distinct, got {0:?}")]
    DuplicateQubits(Vec<usize>),

    #[error("{qubits} qubits exceed the {max}-qubit statevector guard")]
    QubitGuard { qubits: usize, max: usize },

    #[error("fusion inputs must have at least 2 photons, got {size}")]
    SizeBelowTwo { size: u64 },

    #[error("qubit counts differ: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("target {target} is not reachable with the {scheme} scheme; nearest reachable sizes: {nearest:?}")]
    UnreachableTarget {
        scheme: SchemeId,
        target: u64,
        nearest: Vec<u64>,
    },

    #[error("exponent fit: {0}")]
    InvalidFit(String),

    #[error("invalid recycling strategy: {0}")]
    InvalidStrategy(String),
}
