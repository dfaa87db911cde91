//! Counter-based random numbers.
//!
//! Every sample index owns an independent draw sequence derived from
//! `(seed, index)` alone, so sample `i` sees the same numbers no matter which
//! worker evaluates it or in what order.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
const SEED_SALT: u64 = 0x6a09_e667_f3bc_c909;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomStream {
    seed: u64,
    index: u64,
    base: u64,
    cursor: u64,
}

impl RandomStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let key = mix64(seed ^ SEED_SALT);
        let base = mix64(key.wrapping_add(index.wrapping_mul(GOLDEN)));
        Self { seed, index, base, cursor: 0 }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Number of draws taken so far at this index.
    pub fn draws(&self) -> u64 {
        self.cursor
    }

    /// Stream for the sample `k` positions further along, with no draws taken.
    pub fn advanced(&self, k: u64) -> Self {
        Self::new(self.seed, self.index.wrapping_add(k))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.cursor += 1;
        mix64(self.base.wrapping_add(self.cursor.wrapping_mul(GOLDEN)))
    }

    /// Uniform in [0, 1) with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
