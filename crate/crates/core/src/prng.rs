//! Deterministic pseudo-random stream used by every randomized algorithm.
//!
//! The generator is xorshift64* (Marsaglia's xorshift with shifts 12, 25, 27
//! followed by multiplication with `0x2545F4914F6CDD1D`). The seed is passed
//! through one round of SplitMix64 first so that small seeds (including 0)
//! produce well-mixed streams. The stream is fully specified here and does
//! not depend on platform or crate versions.

#[derive(Clone, Debug)]
pub struct Prng {
    state: u64,
}

impl Prng {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        if z == 0 {
            z = 0x2545_F491_4F6C_DD1D;
        }
        Prng { state: z }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform value in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        // rejection sampling keeps the distribution exact
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }

    /// Derive an independent stream, e.g. for a sub-task.
    pub fn fork(&mut self) -> Prng {
        Prng::new(self.next_u64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Prng::new(42);
        let mut b = Prng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn zero_seed_is_usable() {
        let mut a = Prng::new(0);
        let x = a.next_u64();
        assert_ne!(x, 0);
        assert_ne!(x, a.next_u64());
    }

    #[test]
    fn frozen_stream_prefix() {
        // pins the documented algorithm across platforms
        let take = |seed| {
            let mut a = Prng::new(seed);
            [a.next_u64(), a.next_u64(), a.next_u64()]
        };
        assert_eq!(take(0), [0x7BBC_B40D_5506_82D0, 0xDE7F_E413_D00C_C9FD, 0xB3C6_3835_3C66_8C91]);
        assert_eq!(take(42), [0x31B0_ECE7_C4F6_97A2, 0x9008_A3B1_CB68_6F03, 0x7C71_73AB_D97B_E16F]);
    }

    #[test]
    fn below_in_range() {
        let mut a = Prng::new(7);
        for _ in 0..1000 {
            assert!(a.below(9) < 9);
        }
    }
}
