//! SplitMix64, the generator behind every random draw in the simulator.
//!
//! State transition: `state += 0x9E3779B97F4A7C15`; output:
//! `z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB; z ^ z>>31`
//! (all arithmetic wrapping mod 2^64).
//!
//! Trial `i` of a run with master seed `s` starts from state
//! `mix(s + (i + 1) * 0x9E3779B97F4A7C15)`, so trials are independent streams
//! that can run in any order. Bounded draws use rejection: with
//! `threshold = 2^64 mod n`, outputs below `threshold` are discarded and the
//! result is `x mod n`. Matrices are filled row-major.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// The stream of trial `index` under `master_seed`.
    pub fn for_trial(master_seed: u64, index: u64) -> Self {
        SplitMix64::new(mix64(
            master_seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GAMMA)),
        ))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % n;
            }
        }
    }
}
