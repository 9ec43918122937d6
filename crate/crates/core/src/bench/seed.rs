//! Deterministic per-trial random streams.
//!
//! A stream key `(master_seed, scope, index, trial, purpose)` is hashed with
//! 64-bit FNV-1a over a fixed byte layout and finished with the SplitMix64
//! mixer. The resulting word seeds a ChaCha8 generator via
//! `SeedableRng::seed_from_u64`. Every piece is platform independent, so
//! results do not depend on scheduling or word size.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for every simulation stream.
pub type Stream = ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(state: u64, bytes: &[u8]) -> u64 {
    bytes.iter().fold(state, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Identifies one random stream.
#[derive(Debug, Clone, Copy)]
pub struct StreamKey<'a> {
    pub master_seed: u64,
    /// Setting scope, e.g. `zipf(alpha=0.5)` or `population:site-3`.
    pub scope: &'a str,
    /// Support size or sample size of the setting.
    pub index: u64,
    pub trial: u64,
    /// What the stream is for, e.g. `sample`, `dist`, `bca:seneca`.
    pub purpose: &'a str,
}

impl StreamKey<'_> {
    pub fn digest(&self) -> u64 {
        let mut h = fnv1a(FNV_OFFSET, &self.master_seed.to_le_bytes());
        h = fnv1a(h, self.scope.as_bytes());
        h = fnv1a(h, &[0xff]);
        h = fnv1a(h, &self.index.to_le_bytes());
        h = fnv1a(h, &self.trial.to_le_bytes());
        h = fnv1a(h, self.purpose.as_bytes());
        splitmix64(h)
    }

    pub fn stream(&self) -> Stream {
        Stream::seed_from_u64(self.digest())
    }
}
