//! Nearest-neighbor distances D_q(N) of the first N+1 Kronecker points, the
//! spectrum of their distinct values, and the two routes to the count
//! g(α,N): brute-force enumeration and the bracketing formula on the
//! best-approximation sequence. The acceptance suite holds both routes equal.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{
    torus_dist, torus_reduce, DistanceValue, NormKind, RationalVector, TorusPoint,
};
use crate::best_approx::{compute_until_record_exceeds, BestApproxSequence};
use crate::error::{Error, Result};
use crate::orbit::Orbit;

/// The multiset of values D_q(N), q = 0..N, as distinct values with
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapSpectrum {
    pub alpha: RationalVector,
    pub norm: NormKind,
    pub n: u64,
    /// Strictly increasing values with their multiplicities; the
    /// multiplicities sum to N+1.
    pub entries: Vec<(DistanceValue, u64)>,
}

impl GapSpectrum {
    /// Line-delimited export: header, then one `value multiplicity` line.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# alpha={} norm={} N={}", self.alpha, self.norm, self.n).unwrap();
        for (value, mult) in &self.entries {
            writeln!(out, "{} {}", value.value, mult).unwrap();
        }
        out
    }
}

/// Number of distinct nearest distances in the spectrum: g(α,N).
pub fn count_distinct(spectrum: &GapSpectrum) -> u64 {
    spectrum.entries.len() as u64
}

/// Incremental oracle for D_q(N) over a growing N.
///
/// Adding point N+1 updates every running minimum in O(N·d) exact integer
/// operations, so sweeping all N ≤ N_max costs O(N_max²·d) total.
pub struct SpectrumSweep {
    alpha: RationalVector,
    norm: NormKind,
    orbit: Orbit,
    points: Vec<Vec<BigInt>>,
    /// Scaled numerators of D_q over the orbit's common denominator.
    dmin: Vec<BigInt>,
}

impl SpectrumSweep {
    /// Starts at N = 1 (the smallest N for which D_q is defined).
    pub fn new(alpha: &RationalVector, norm: NormKind) -> Result<Self> {
        let mut orbit = Orbit::new(alpha);
        if *orbit.lcm() <= BigInt::from(1) {
            return Err(Error::IntegralAlpha);
        }
        orbit.advance();
        let p0 = vec![BigInt::from(0); alpha.dim()];
        let p1 = orbit.point();
        let d01 = orbit.pair_dist_numerator(&p0, &p1, norm);
        Ok(Self {
            alpha: alpha.clone(),
            norm,
            orbit,
            points: vec![p0, p1],
            dmin: vec![d01.clone(), d01],
        })
    }

    pub fn n(&self) -> u64 {
        (self.points.len() - 1) as u64
    }

    /// Add the next orbit point; fails when N would reach the orbit period.
    pub fn advance(&mut self) -> Result<()> {
        let new_n = self.points.len() as u64;
        if BigInt::from(new_n) >= *self.orbit.lcm() {
            return Err(Error::HorizonGuard {
                horizon: new_n,
                period: self.orbit.lcm().clone(),
            });
        }
        self.orbit.advance();
        let p = self.orbit.point();
        let mut best: Option<BigInt> = None;
        for (k, pk) in self.points.iter().enumerate() {
            let dnum = self.orbit.pair_dist_numerator(pk, &p, self.norm);
            if best.as_ref().map_or(true, |b| dnum < *b) {
                best = Some(dnum.clone());
            }
            if dnum < self.dmin[k] {
                self.dmin[k] = dnum;
            }
        }
        self.dmin.push(best.expect("at least one earlier point"));
        self.points.push(p);
        Ok(())
    }

    pub fn advance_to(&mut self, n: u64) -> Result<()> {
        while self.n() < n {
            self.advance()?;
        }
        Ok(())
    }

    /// D_q(N) for the current N.
    pub fn d_value(&self, q: u64) -> Result<DistanceValue> {
        if q > self.n() {
            return Err(Error::Invalid(format!("q={q} exceeds N={}", self.n())));
        }
        Ok(self
            .orbit
            .distance_value(self.dmin[q as usize].clone(), self.norm))
    }

    /// g(α,N) for the current N.
    pub fn distinct_count(&self) -> u64 {
        let set: std::collections::BTreeSet<&BigInt> = self.dmin.iter().collect();
        set.len() as u64
    }

    pub fn spectrum(&self) -> GapSpectrum {
        let mut counts: BTreeMap<BigInt, u64> = BTreeMap::new();
        for d in &self.dmin {
            *counts.entry(d.clone()).or_insert(0) += 1;
        }
        let entries = counts
            .into_iter()
            .map(|(num, mult)| (self.orbit.distance_value(num, self.norm), mult))
            .collect();
        GapSpectrum {
            alpha: self.alpha.clone(),
            norm: self.norm,
            n: self.n(),
            entries,
        }
    }
}

fn check_window(alpha: &RationalVector, n: u64) -> Result<()> {
    if n < 1 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    let period = alpha.denominator_lcm();
    if BigInt::from(n) >= period {
        return Err(Error::HorizonGuard { horizon: n, period });
    }
    Ok(())
}

/// D_q(N) by direct pairwise enumeration over all k ≤ N, k ≠ q.
///
/// This is the oracle path: it goes through the general rational-arithmetic
/// distance and never touches the best-approximation machinery.
pub fn nearest_distance(
    alpha: &RationalVector,
    norm: NormKind,
    q: u64,
    n: u64,
) -> Result<DistanceValue> {
    check_window(alpha, n)?;
    if q > n {
        return Err(Error::Invalid(format!("q={q} outside [0, N={n}]")));
    }
    let reduce = |k: u64| -> TorusPoint { torus_reduce(&alpha.scaled(&BigInt::from(k))) };
    let xq = reduce(q);
    let mut best: Option<DistanceValue> = None;
    for k in 0..=n {
        if k == q {
            continue;
        }
        let d = torus_dist(&xq, &reduce(k), norm)?;
        if best.as_ref().map_or(true, |b| d.value < b.value) {
            best = Some(d);
        }
    }
    best.ok_or_else(|| Error::Invalid("no neighbor to compare against".into()))
}

/// D_q(N) through the best-approximation sequence:
/// D_q(N) = r_m where q_m is the largest term ≤ max(q, N−q).
pub fn nearest_distance_fast(
    seq: &BestApproxSequence,
    q: u64,
    n: u64,
) -> Result<DistanceValue> {
    if n < 1 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    if q > n {
        return Err(Error::Invalid(format!("q={q} outside [0, N={n}]")));
    }
    let reach = q.max(n - q);
    if seq.hit_zero() {
        let zero_q = seq.terms().last().expect("hit_zero implies a term").q;
        if zero_q <= reach {
            return Err(Error::ZeroHit { q: zero_q });
        }
    }
    if seq.q_max() < reach {
        return Err(Error::HorizonTooShort {
            needed: reach,
            have: seq.q_max(),
        });
    }
    let idx = seq
        .last_index_at_or_below(reach)
        .expect("q_1 = 1 is always within reach");
    Ok(seq.r_at(idx).clone())
}

/// Full spectrum at one N via the incremental oracle.
pub fn gap_spectrum(alpha: &RationalVector, norm: NormKind, n: u64) -> Result<GapSpectrum> {
    check_window(alpha, n)?;
    let mut sweep = SpectrumSweep::new(alpha, norm)?;
    sweep.advance_to(n)?;
    Ok(sweep.spectrum())
}

/// g(α,N) from the bracketing indices q_n ≤ N < q_{n+1}, 2q_m ≤ N < 2q_{m+1}:
/// n−m when 2q_{m+1} = N+1, otherwise n−m+1. N = 1 yields 1 by convention
/// (the only nearest distance is the mutual one).
pub fn bracketing_count(seq: &BestApproxSequence, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    if seq.hit_zero() {
        let zero_q = seq.terms().last().expect("hit_zero implies a term").q;
        if zero_q <= n {
            return Err(Error::ZeroHit { q: zero_q });
        }
    }
    let idx_n = seq
        .last_index_at_or_below(n)
        .ok_or(Error::Unbracketable { n })?;
    if idx_n + 1 > seq.len() {
        return Err(Error::Unbracketable { n });
    }
    let idx_m = seq
        .last_index_at_or_below(n / 2)
        .ok_or(Error::Unbracketable { n })?;
    debug_assert!(idx_m + 1 <= seq.len());
    let count = (idx_n - idx_m) as u64;
    if 2 * seq.q_at(idx_m + 1) as u128 == n as u128 + 1 {
        Ok(count)
    } else {
        Ok(count + 1)
    }
}

/// g over a window of N, by either route; finite-horizon surrogate for the
/// sup/liminf statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    pub alpha: RationalVector,
    pub norm: NormKind,
    pub n_lo: u64,
    pub n_hi: u64,
    pub g_values: Vec<(u64, u64)>,
    /// Lower bound for sup_N g(α,N).
    pub window_max: u64,
    /// Upper-horizon estimate for liminf_N g(α,N).
    pub window_min: u64,
}

pub fn window_stats(
    alpha: &RationalVector,
    norm: NormKind,
    n_lo: u64,
    n_hi: u64,
    use_fast: bool,
) -> Result<CountSeries> {
    if n_lo < 2 || n_lo > n_hi {
        return Err(Error::Invalid(format!("bad window [{n_lo}, {n_hi}]")));
    }
    check_window(alpha, n_hi)?;
    let mut g_values = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    if use_fast {
        let seq = compute_until_record_exceeds(alpha, norm, n_hi, u64::MAX)?;
        for n in n_lo..=n_hi {
            g_values.push((n, bracketing_count(&seq, n)?));
        }
    } else {
        let mut sweep = SpectrumSweep::new(alpha, norm)?;
        sweep.advance_to(n_lo)?;
        g_values.push((n_lo, sweep.distinct_count()));
        for n in n_lo + 1..=n_hi {
            sweep.advance()?;
            g_values.push((n, sweep.distinct_count()));
        }
    }
    let window_max = g_values.iter().map(|&(_, g)| g).max().unwrap();
    let window_min = g_values.iter().map(|&(_, g)| g).min().unwrap();
    Ok(CountSeries {
        alpha: alpha.clone(),
        norm,
        n_lo,
        n_hi,
        g_values,
        window_max,
        window_min,
    })
}
