//! Seeded inputs shared by the criterion benches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use range_arith::FieldElement;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn random_scalars(n: usize, seed: u64) -> Vec<FieldElement> {
    let mut r = rng(seed);
    (0..n).map(|_| FieldElement::random(&mut r)).collect()
}

/// Values uniform in `[0, 2^bits)`.
pub fn random_values(n: usize, bits: u32, seed: u64) -> Vec<u64> {
    let mut r = rng(seed);
    (0..n).map(|_| r.gen_range(0..1u64 << bits)).collect()
}

/// Signed integers uniform in `[-bound, bound)`.
pub fn random_signed(n: usize, bound: i64, seed: u64) -> Vec<FieldElement> {
    let mut r = rng(seed);
    (0..n).map(|_| FieldElement::from_i64(r.gen_range(-bound..bound))).collect()
}
