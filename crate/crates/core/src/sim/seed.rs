//! Per-trial random streams.
//!
//! The seed of trial `t` under master seed `s` is
//!
//! ```text
//! z = s + (t + 1) * 0x9E3779B97F4A7C15          (wrapping u64 arithmetic)
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! seed = z ^ (z >> 31)
//! ```
//!
//! i.e. the SplitMix64 output for state `s` advanced `t + 1` times. The trial
//! generator is ChaCha8 keyed with the 32 bytes formed by the next four
//! SplitMix64 outputs after `seed` (each little-endian).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(state: u64) -> Self {
        Self { state }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }
}

pub fn trial_seed(master_seed: u64, trial_index: usize) -> u64 {
    mix(master_seed.wrapping_add((trial_index as u64).wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn trial_rng(master_seed: u64, trial_index: usize) -> ChaCha8Rng {
    let mut sm = SplitMix64::new(trial_seed(master_seed, trial_index));
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&sm.next_u64().to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
