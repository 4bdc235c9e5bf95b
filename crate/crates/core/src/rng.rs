//! Seeded random streams.
//!
//! All randomness goes through ChaCha8 (`rand_chacha`), seeded with
//! [`SeedableRng::seed_from_u64`], with a fixed stream number per purpose. Integers and floats are
//! derived from raw `next_u64` words by the conversions below rather than through `rand`'s
//! distribution code, so a seed reproduces the same draws regardless of `rand` versions.
//!
//! The algorithm is identified by [`RNG_ID`], which is recorded in saved models.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Identifier of the generator, stream layout and conversions used in this module.
pub const RNG_ID: &str = "chacha8-u64seed-lemire-v1";

/// Stream used for drawing anchor points during training.
pub const STREAM_ANCHORS: u64 = 0;
/// Stream used for training-set inputs.
pub const STREAM_TRAIN: u64 = 1;
/// Stream used for test-set inputs.
pub const STREAM_TEST: u64 = 2;

/// A seeded generator bound to one stream.
#[derive(Debug, Clone)]
pub struct Stream(ChaCha8Rng);

impl Stream {
    /// Opens `stream` of the generator seeded with `seed`.
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Stream(rng)
    }

    /// Next raw 64-bit word.
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform float in `[0, 1)` from the top 53 bits of one word.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Unbiased uniform integer in `0..bound` (Lemire's multiply-and-reject).
    ///
    /// Panics if `bound` is zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let wide = u128::from(self.next_u64()) * u128::from(bound);
            if (wide as u64) >= threshold {
                return (wide >> 64) as u64;
            }
        }
    }
}

/// Draws `count` indices uniformly from `0..population`, with replacement, in one sequential pass.
pub fn anchor_indices(seed: u64, count: usize, population: usize) -> Vec<usize> {
    let mut stream = Stream::new(seed, STREAM_ANCHORS);
    (0..count)
        .map(|_| stream.below(population as u64) as usize)
        .collect()
}
