//! Deterministic randomness for generators and experiments.
//!
//! Everything seeded in this crate runs on ChaCha8 (`rand_chacha` 0.3,
//! `ChaCha8Rng`), a counter-based stream cipher generator whose output is
//! fixed by the algorithm itself, not by library internals. A [`Seed`] plus a
//! stream index fully determines a byte sequence on every platform.
//!
//! Sampling primitives are spelled out here instead of pulled from a
//! distributions crate so that the exact draw sequence is part of this
//! crate's contract: regenerating a graph from a recorded seed must be
//! bit-for-bit stable across dependency bumps.

use alloc::vec::Vec;
use rand_core::{RngCore, SeedableRng};

pub use rand_chacha::ChaCha8Rng;

/// Master seed for a generator call or an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed(pub u64);

/// ChaCha8 instance for `seed`, positioned on the given stream.
/// Streams are independent; callers carve one stream per purpose.
pub fn rng(seed: Seed, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed.0);
    r.set_stream(stream);
    r
}

/// Derives a child seed for item `index` under namespace `tag`.
/// Word positions are disjoint per index, so derivation is random access:
/// derive(s, t, i) never depends on derive(s, t, j) having been computed.
pub fn derive(seed: Seed, tag: u64, index: u64) -> Seed {
    let mut r = rng(seed, tag);
    r.set_word_pos((index as u128) << 1);
    Seed(r.next_u64())
}

/// Unbiased integer in [0, bound) by rejection below 2^64 mod bound.
pub fn below(r: &mut ChaCha8Rng, bound: u64) -> u64 {
    assert!(bound > 0, "below() requires a positive bound");
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let x = r.next_u64();
        if x >= threshold {
            return x % bound;
        }
    }
}

/// Uniform f64 in [0, 1) with 53 random bits: (u64 >> 11) / 2^53.
pub fn unit(r: &mut ChaCha8Rng) -> f64 {
    const SCALE: f64 = 1.0 / ((1u64 << 53) as f64);
    (r.next_u64() >> 11) as f64 * SCALE
}

/// In-place Fisher-Yates shuffle, descending index order.
pub fn shuffle<T>(r: &mut ChaCha8Rng, xs: &mut [T]) {
    for i in (1..xs.len()).rev() {
        let j = below(r, (i + 1) as u64) as usize;
        xs.swap(i, j);
    }
}

/// Random permutation of 0..n.
pub fn permutation(r: &mut ChaCha8Rng, n: u32) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n).collect();
    shuffle(r, &mut p);
    p
}

/// Index draw weighted by `weights` (zero-weight entries are never picked).
/// Walks the cumulative sum of a draw below the total.
pub fn weighted(r: &mut ChaCha8Rng, weights: &[u64]) -> usize {
    let total: u64 = weights.iter().sum();
    assert!(total > 0, "weighted() requires positive total weight");
    let mut x = below(r, total);
    for (i, &w) in weights.iter().enumerate() {
        if x < w {
            return i;
        }
        x -= w;
    }
    unreachable!("cumulative walk exhausted below total")
}
