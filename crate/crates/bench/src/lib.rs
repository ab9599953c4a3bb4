//! Shared inputs for the benchmark suite.

use kron_core::{sample_alpha, sample_rng, RationalVector, DEFAULT_PRIME};

/// A reproducible grid alpha for dimension `d`.
pub fn bench_alpha(d: usize) -> RationalVector {
    let mut rng = sample_rng(0xBE7C4, 0);
    sample_alpha(d, DEFAULT_PRIME, &mut rng).unwrap()
}
