//! Randomized search for (α, N) witnesses with a large nearest-distance
//! count, and empirical sampling of doubling-failure indices.
//!
//! Sampling distribution: each coordinate is uniform over {1,…,P−1}/P for a
//! configured large prime P, a fine-grid surrogate for Lebesgue measure.
//! Randomness is a seeded ChaCha8 generator with one substream per sample
//! (stream id = sample index + 1), so runs are reproducible and samples are
//! independent of each other and of the budget.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{NormKind, Rational, RationalVector};
use crate::best_approx::{
    compute_best_approximations, compute_until_record_exceeds, BestApproxSequence,
};
use crate::error::{Error, Result};
use crate::gap_spectrum::{bracketing_count, SpectrumSweep};

/// Default grid denominator for sampled α.
pub const DEFAULT_PRIME: u64 = 1_000_003;

/// Per-sample substream: identical (seed, index) always yields the same α.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index + 1);
    rng
}

pub fn sample_alpha(d: usize, prime: u64, rng: &mut impl Rng) -> Result<RationalVector> {
    if d == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    if prime < 3 {
        return Err(Error::Invalid("grid denominator must be at least 3".into()));
    }
    let coords = (0..d)
        .map(|_| {
            let numer = rng.gen_range(1..prime);
            Rational::new(numer.into(), prime.into())
        })
        .collect();
    RationalVector::new(coords)
}

/// A located (α, N) with its verified count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub alpha: RationalVector,
    pub n: u64,
    pub norm: NormKind,
    pub g: u64,
    pub verified_by_oracle: bool,
}

/// Sample `budget` alphas, sweep N ≤ n_max with the bracketing count, and
/// oracle-verify every candidate that reaches `target_g`. Returns all
/// verified witnesses; an empty list is a valid outcome.
pub fn search_high_g(
    d: usize,
    norm: NormKind,
    target_g: u64,
    budget: u64,
    seed: u64,
    n_max: u64,
    prime: u64,
) -> Result<Vec<Witness>> {
    if d == 0 || budget == 0 || target_g == 0 {
        return Err(Error::Invalid(
            "dimension, budget and target must be positive".into(),
        ));
    }
    if n_max < 2 {
        return Err(Error::Invalid("N_max must be at least 2".into()));
    }
    let scan_cap = n_max.saturating_mul(64);
    let mut witnesses = Vec::new();
    for index in 0..budget {
        let mut rng = sample_rng(seed, index);
        let alpha = sample_alpha(d, prime, &mut rng)?;
        let seq = match compute_until_record_exceeds(&alpha, norm, n_max, scan_cap) {
            Ok(seq) => seq,
            // A sample whose records stall before n_max is skipped, not fatal.
            Err(Error::Unbracketable { .. }) => continue,
            Err(e) => return Err(e),
        };
        let mut sweep: Option<SpectrumSweep> = None;
        for n in 2..=n_max {
            let g_fast = match bracketing_count(&seq, n) {
                Ok(g) => g,
                Err(Error::Unbracketable { .. }) | Err(Error::ZeroHit { .. }) => break,
                Err(e) => return Err(e),
            };
            if g_fast >= target_g {
                let sweep = match &mut sweep {
                    Some(s) => s,
                    None => sweep.insert(SpectrumSweep::new(&alpha, norm)?),
                };
                sweep.advance_to(n)?;
                let g_oracle = sweep.distinct_count();
                if g_oracle >= target_g {
                    witnesses.push(Witness {
                        alpha: alpha.clone(),
                        n,
                        norm,
                        g: g_oracle,
                        verified_by_oracle: true,
                    });
                    break;
                }
            }
        }
    }
    Ok(witnesses)
}

/// Counts of indices n with q_{n+T} < 2q_n over the computed horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingCount {
    pub checked_indices: u64,
    pub violations: u64,
}

pub fn count_doubling_violations(seq: &BestApproxSequence, shift: u64) -> Result<DoublingCount> {
    if shift == 0 {
        return Err(Error::Invalid("shift must be positive".into()));
    }
    let len = seq.len() as u64;
    let checked = len.saturating_sub(shift);
    let violations = (1..=checked as usize)
        .filter(|&n| (seq.q_at(n + shift as usize) as u128) < 2 * seq.q_at(n) as u128)
        .count() as u64;
    Ok(DoublingCount {
        checked_indices: checked,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub index: u64,
    pub alpha: RationalVector,
    pub terms: u64,
    pub checked_indices: u64,
    pub violation_count: u64,
}

/// Frequency report for q_{n+T} < 2q_n across sampled alphas. Purely
/// descriptive: a finite horizon supports no asymptotic claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingReport {
    pub d: usize,
    pub norm: NormKind,
    pub shift: u64,
    pub sample_count: u64,
    pub horizon: u64,
    pub prime: u64,
    pub seed: u64,
    pub rows: Vec<SampleRow>,
    pub samples_with_witness: u64,
    pub witness_fraction: f64,
    pub mean_violations: f64,
}

pub fn sample_doubling_violations(
    d: usize,
    norm: NormKind,
    shift: u64,
    samples: u64,
    seed: u64,
    q_max: u64,
    prime: u64,
) -> Result<SamplingReport> {
    if samples == 0 {
        return Err(Error::Invalid("sample count must be positive".into()));
    }
    if d == 0 || shift == 0 {
        return Err(Error::Invalid("dimension and shift must be positive".into()));
    }
    let mut rows = Vec::with_capacity(samples as usize);
    for index in 0..samples {
        let mut rng = sample_rng(seed, index);
        let alpha = sample_alpha(d, prime, &mut rng)?;
        let seq = compute_best_approximations(&alpha, norm, q_max)?;
        let count = count_doubling_violations(&seq, shift)?;
        rows.push(SampleRow {
            index,
            alpha,
            terms: seq.len() as u64,
            checked_indices: count.checked_indices,
            violation_count: count.violations,
        });
    }
    let samples_with_witness = rows.iter().filter(|r| r.violation_count > 0).count() as u64;
    let total_violations: u64 = rows.iter().map(|r| r.violation_count).sum();
    Ok(SamplingReport {
        d,
        norm,
        shift,
        sample_count: samples,
        horizon: q_max,
        prime,
        seed,
        witness_fraction: samples_with_witness as f64 / samples as f64,
        mean_violations: total_violations as f64 / samples as f64,
        samples_with_witness,
        rows,
    })
}
