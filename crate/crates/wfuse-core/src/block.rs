//! Symbolic tensor-product descriptors for fusion outcomes.
//!
//! The analytic engine never touches amplitudes; it describes a post-fusion
//! state as an ordered list of blocks, each either a W state of some size or
//! a run of unentangled H photons. `materialize` turns a descriptor back into
//! a dense [`PureState`] so it can be compared against the statevector
//! simulator.

use std::fmt;

use crate::error::Error;
use crate::state::{PartyTag, PureState};

/// One factor of a tensor-product state.
///
/// `W(1)` is admitted as a degenerate block (a single V photon, not
/// entangled with anything); it shows up when a party is reduced to one
/// photon and is never recyclable. `AllH(0)` is the empty block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    W(u64),
    AllH(u64),
}

impl Block {
    pub fn photon_count(self) -> u64 {
        match self {
            Block::W(size) => size,
            Block::AllH(count) => count,
        }
    }

    /// Size of the W state this block carries, if it is one.
    pub fn w_size(self) -> Option<u64> {
        match self {
            Block::W(size) => Some(size),
            Block::AllH(_) => None,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::W(size) => write!(f, "W({size})"),
            Block::AllH(count) => write!(f, "AllH({count})"),
        }
    }
}

/// An ordered tensor product of [`Block`]s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockState {
    blocks: Vec<Block>,
}

impl BlockState {
    /// Builds a descriptor; W blocks must have size >= 1.
    pub fn new(blocks: Vec<Block>) -> Result<BlockState, Error> {
        if blocks.iter().any(|b| matches!(b, Block::W(0))) {
            return Err(Error::EmptyWState);
        }
        Ok(BlockState { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn photon_count(&self) -> u64 {
        self.blocks.iter().map(|b| b.photon_count()).sum()
    }

    /// Expands the descriptor into a dense state, blocks in order.
    pub fn materialize(&self) -> Result<PureState, Error> {
        let mut state = PureState::scalar_unit();
        for block in &self.blocks {
            let factor = match *block {
                Block::W(size) => PureState::w(size, PartyTag::A)?,
                Block::AllH(count) => PureState::all_h(count as usize, PartyTag::A)?,
            };
            state = state.tensor(&factor)?;
        }
        Ok(state)
    }
}

impl fmt::Display for BlockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}
