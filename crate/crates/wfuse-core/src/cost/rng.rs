//! Deterministic pseudo-randomness for the Monte Carlo engine.
//!
//! One generator family is used everywhere: SplitMix64 (Steele, Lea &
//! Flood's 64-bit mix with the golden-gamma increment). Run `r` of a
//! simulation draws from its own substream, seeded with the `r`-th output of
//! a SplitMix64 stream seeded by the master seed — so runs are independent,
//! reproducible bit for bit, and can be evaluated in any order or in
//! parallel.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// David Stafford's "variant 13" 64-bit finalizer, as used by SplitMix64.
pub fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64: `state += GOLDEN_GAMMA; output = mix64(state)`.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform double in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// The generator for run `run_index` under `master_seed`: a SplitMix64
/// seeded with `mix64(master_seed + (run_index + 1) * GOLDEN_GAMMA)`, which
/// is the `run_index`-th output of the master stream.
pub fn substream(master_seed: u64, run_index: u64) -> SplitMix64 {
    let jumped = master_seed.wrapping_add((run_index + 1).wrapping_mul(GOLDEN_GAMMA));
    SplitMix64::new(mix64(jumped))
}
