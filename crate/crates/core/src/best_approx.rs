//! Best Diophantine approximation sequences {q_n} with their record
//! distances {r_n}, and the growth-inequality checks built on them.
//!
//! The scan is a single linear pass with a running minimum: q_1 = 1, and
//! q_{n+1} is the least q > q_n with dist(0, qα) strictly below the current
//! record. A rational α stands in for an irrational one; the horizon guard
//! keeps every scan strictly below the orbit period lcm(denominators), where
//! the orbit is injective and all distances are positive.

use std::fmt::Write as _;

use num::bigint::BigInt;
use num::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, DistanceValue, NormKind, Rational, RationalVector};
use crate::error::{Error, Result};
use crate::orbit::Orbit;

/// One record minimum: `dist(0, q·α) = r`, strictly below all earlier values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub q: u64,
    pub r: DistanceValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestApproxSequence {
    alpha: RationalVector,
    norm: NormKind,
    q_max: u64,
    terms: Vec<Term>,
    hit_zero: bool,
}

impl BestApproxSequence {
    pub fn alpha(&self) -> &RationalVector {
        &self.alpha
    }

    pub fn norm(&self) -> NormKind {
        self.norm
    }

    pub fn q_max(&self) -> u64 {
        self.q_max
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn hit_zero(&self) -> bool {
        self.hit_zero
    }

    /// 1-based q_n.
    pub fn q_at(&self, n: usize) -> u64 {
        self.terms[n - 1].q
    }

    /// 1-based r_n.
    pub fn r_at(&self, n: usize) -> &DistanceValue {
        &self.terms[n - 1].r
    }

    /// Index of the largest term with q ≤ bound, 1-based.
    pub fn last_index_at_or_below(&self, bound: u64) -> Option<usize> {
        match self.terms.binary_search_by(|t| t.q.cmp(&bound)) {
            Ok(i) => Some(i + 1),
            Err(0) => None,
            Err(i) => Some(i),
        }
    }

    /// Line-oriented record format: a header with alpha and the horizon,
    /// then one `q r_numerator r_denominator norm` line per term.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# alpha={} norm={} q_max={} hit_zero={}",
            self.alpha, self.norm, self.q_max, self.hit_zero
        )
        .unwrap();
        for t in &self.terms {
            writeln!(
                out,
                "{} {} {} {}",
                t.q,
                t.r.value.numer(),
                t.r.value.denom(),
                t.r.norm
            )
            .unwrap();
        }
        out
    }

    pub fn parse_records(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty record block".into()))?;
        let header = header
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("missing `#` header".into()))?;
        let mut alpha = None;
        let mut norm = None;
        let mut q_max = None;
        let mut hit_zero = false;
        for field in header.split_whitespace() {
            let (key, val) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field `{field}`")))?;
            match key {
                "alpha" => alpha = Some(RationalVector::parse(val)?),
                "norm" => norm = Some(val.parse::<NormKind>()?),
                "q_max" => {
                    q_max = Some(
                        val.parse::<u64>()
                            .map_err(|e| Error::Parse(format!("bad q_max: {e}")))?,
                    )
                }
                "hit_zero" => hit_zero = val == "true",
                other => return Err(Error::Parse(format!("unknown header key `{other}`"))),
            }
        }
        let alpha = alpha.ok_or_else(|| Error::Parse("header lacks alpha".into()))?;
        let norm = norm.ok_or_else(|| Error::Parse("header lacks norm".into()))?;
        let q_max = q_max.ok_or_else(|| Error::Parse("header lacks q_max".into()))?;
        let mut terms = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!("bad term line `{line}`")));
            }
            let q = parts[0]
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad q: {e}")))?;
            let value = parse_rational(&format!("{}/{}", parts[1], parts[2]))?;
            let term_norm = parts[3].parse::<NormKind>()?;
            if term_norm != norm {
                return Err(Error::Parse("term norm differs from header norm".into()));
            }
            terms.push(Term {
                q,
                r: DistanceValue::new(norm, value)?,
            });
        }
        Ok(Self {
            alpha,
            norm,
            q_max,
            terms,
            hit_zero,
        })
    }
}

/// dist(0, q·α) on the torus, via the general rational-arithmetic route.
pub fn orbit_distance(alpha: &RationalVector, q: u64, norm: NormKind) -> DistanceValue {
    use crate::arith::{torus_dist, torus_reduce, TorusPoint};
    let point = torus_reduce(&alpha.scaled(&BigInt::from(q)));
    torus_dist(&TorusPoint::origin(alpha.dim()), &point, norm)
        .expect("origin has matching dimension")
}

fn check_not_integral(alpha: &RationalVector) -> Result<()> {
    if alpha.is_integral() {
        return Err(Error::IntegralAlpha);
    }
    Ok(())
}

enum ScanStop {
    /// Scan q = 1..=q_max; the horizon guard requires q_max < lcm(denoms).
    AtQMax(u64),
    /// Scan until a record term with q > bound appears; give up at cap.
    RecordAbove { bound: u64, cap: u64 },
}

fn scan(alpha: &RationalVector, norm: NormKind, stop: ScanStop) -> Result<BestApproxSequence> {
    check_not_integral(alpha)?;
    let mut orbit = Orbit::new(alpha);
    let period = orbit.lcm().clone();
    let limit = match stop {
        ScanStop::AtQMax(q_max) => {
            if q_max < 1 {
                return Err(Error::Invalid("q_max must be at least 1".into()));
            }
            if BigInt::from(q_max) >= period {
                return Err(Error::HorizonGuard {
                    horizon: q_max,
                    period,
                });
            }
            q_max
        }
        ScanStop::RecordAbove { cap, .. } => {
            // The scan may reach the period itself: the exact hit there is a
            // zero-distance record that closes the bracket and sets hit_zero.
            let guard = period.to_u64().unwrap_or(u64::MAX);
            cap.min(guard)
        }
    };
    let bound = match stop {
        ScanStop::RecordAbove { bound, .. } => Some(bound),
        ScanStop::AtQMax(_) => None,
    };

    let mut terms: Vec<Term> = Vec::new();
    let mut record: Option<BigInt> = None;
    let mut hit_zero = false;
    let mut scanned = 0u64;
    while scanned < limit {
        orbit.advance();
        scanned = orbit.q();
        let numerator = orbit.dist_to_zero_numerator(norm);
        let is_new_record = match &record {
            None => true,
            Some(best) => numerator < *best,
        };
        if is_new_record {
            let zero = numerator.is_zero();
            terms.push(Term {
                q: scanned,
                r: orbit.distance_value(numerator.clone(), norm),
            });
            record = Some(numerator);
            if zero {
                hit_zero = true;
                break;
            }
            if let Some(b) = bound {
                if scanned > b {
                    break;
                }
            }
        }
    }
    if let Some(b) = bound {
        let bracketed = terms.last().map_or(false, |t| t.q > b) || hit_zero;
        if !bracketed {
            return Err(Error::Unbracketable { n: b });
        }
    }
    Ok(BestApproxSequence {
        alpha: alpha.clone(),
        norm,
        q_max: scanned,
        terms,
        hit_zero,
    })
}

/// The record minima of q ↦ dist(0, qα) over q = 1..=q_max.
pub fn compute_best_approximations(
    alpha: &RationalVector,
    norm: NormKind,
    q_max: u64,
) -> Result<BestApproxSequence> {
    scan(alpha, norm, ScanStop::AtQMax(q_max))
}

/// Scan just far enough that the last term exceeds `bound`, so every N ≤ bound
/// can be bracketed by consecutive terms. Stops scanning at `cap`.
pub fn compute_until_record_exceeds(
    alpha: &RationalVector,
    norm: NormKind,
    bound: u64,
    cap: u64,
) -> Result<BestApproxSequence> {
    scan(alpha, norm, ScanStop::RecordAbove { bound, cap })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantifier {
    #[serde(rename = "for_all")]
    ForAll,
    #[serde(rename = "exists_infinitely")]
    ExistsInfinitely,
}

/// Outcome of checking `q_{n+shift} ≥ q_{n+1} + q_n` over a finite horizon.
///
/// Indices beyond the horizon are simply not in `checked_range`; they are
/// never reported as violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub shift: u64,
    pub quantifier: Quantifier,
    /// 1-based inclusive interval of checked n.
    pub checked_range: (usize, usize),
    pub violations: Vec<usize>,
    pub witnesses: Vec<usize>,
    pub passed: bool,
}

impl InequalityReport {
    fn from_checks(
        shift: u64,
        quantifier: Quantifier,
        checked_range: (usize, usize),
        holds: impl Iterator<Item = (usize, bool)>,
    ) -> Self {
        let mut violations = Vec::new();
        let mut witnesses = Vec::new();
        for (n, ok) in holds {
            if ok {
                witnesses.push(n);
            } else {
                violations.push(n);
            }
        }
        let passed = match quantifier {
            Quantifier::ForAll => violations.is_empty(),
            Quantifier::ExistsInfinitely => !witnesses.is_empty(),
        };
        if let Quantifier::ForAll = quantifier {
            witnesses.clear();
        }
        Self {
            shift,
            quantifier,
            checked_range,
            violations,
            witnesses,
            passed,
        }
    }
}

/// Check q_{n+shift} ≥ q_{n+1} + q_n on every n the horizon covers.
pub fn verify_sum_inequality(
    seq: &BestApproxSequence,
    shift: u64,
    quantifier: Quantifier,
) -> Result<InequalityReport> {
    if shift == 0 {
        return Err(Error::Invalid("shift must be positive".into()));
    }
    let needed = shift as usize + 2;
    if seq.len() < needed {
        return Err(Error::SequenceTooShort {
            needed,
            have: seq.len(),
        });
    }
    let last_n = seq.len() - shift as usize;
    let checks = (1..=last_n).map(|n| {
        let lhs = seq.q_at(n + shift as usize) as u128;
        let rhs = seq.q_at(n + 1) as u128 + seq.q_at(n) as u128;
        (n, lhs >= rhs)
    });
    Ok(InequalityReport::from_checks(
        shift,
        quantifier,
        (1, last_n),
        checks,
    ))
}

/// Documented table of contact numbers; `None` means unknown, not zero.
///
/// L∞: the 3^d − 1 translates of the unit cube by nonzero vectors in
/// {−1,0,1}^d touch it pairwise-disjointly, and that count is sharp.
/// L²: 2, 6, 12, 24 for d = 1..4 (hexagonal/fcc/D4 configurations with the
/// matching upper bounds from the literature).
pub fn contact_number(norm: NormKind, d: u32) -> Option<u64> {
    if d == 0 {
        return None;
    }
    match norm {
        NormKind::Linf => 3u64.checked_pow(d).map(|p| p - 1),
        NormKind::L2 => match d {
            1 => Some(2),
            2 => Some(6),
            3 => Some(12),
            4 => Some(24),
            _ => None,
        },
        NormKind::L1 => None,
    }
}

/// Minimal T with q_{n+T} ≥ 2q_n for every n the horizon covers.
pub fn doubling_index(seq: &BestApproxSequence) -> Result<u64> {
    if seq.len() < 2 {
        return Err(Error::SequenceTooShort {
            needed: 2,
            have: seq.len(),
        });
    }
    for t in 1..seq.len() as u64 {
        let ok = (1..=seq.len() - t as usize)
            .all(|n| seq.q_at(n + t as usize) as u128 >= 2 * seq.q_at(n) as u128);
        if ok {
            return Ok(t);
        }
    }
    // Vacuous at T = len: no index pair left to check.
    Ok(seq.len() as u64)
}

/// Check r_{n+K} ≤ r_n / 2 over the horizon. For L² the stored values are
/// squared distances, so the check becomes r²_{n+K} ≤ r²_n / 4.
pub fn halving_check(seq: &BestApproxSequence, k: u64) -> Result<InequalityReport> {
    if k == 0 {
        return Err(Error::Invalid("K must be positive".into()));
    }
    let needed = k as usize + 1;
    if seq.len() < needed {
        return Err(Error::SequenceTooShort {
            needed,
            have: seq.len(),
        });
    }
    let factor = match seq.norm() {
        NormKind::L2 => Rational::from(BigInt::from(4)),
        _ => Rational::from(BigInt::from(2)),
    };
    let last_n = seq.len() - k as usize;
    let checks = (1..=last_n).map(|n| {
        let lhs = &seq.r_at(n + k as usize).value * &factor;
        (n, lhs <= seq.r_at(n).value)
    });
    Ok(InequalityReport::from_checks(
        k,
        Quantifier::ForAll,
        (1, last_n),
        checks,
    ))
}

/// Check q_{n+1} ≥ ⌊r_{n−1}/r_n⌋ · q_n with an exact rational floor.
///
/// L∞ only: on squared L² values the floor of the true ratio is not
/// recoverable without square roots, so the check is not offered there.
pub fn ratio_floor_check(seq: &BestApproxSequence) -> Result<InequalityReport> {
    if seq.norm() != NormKind::Linf {
        return Err(Error::WrongNorm {
            expected: NormKind::Linf,
            got: seq.norm(),
        });
    }
    if seq.len() < 3 {
        return Err(Error::SequenceTooShort {
            needed: 3,
            have: seq.len(),
        });
    }
    let last_n = seq.len() - 1;
    let checks = (2..=last_n).map(|n| {
        let ratio = &seq.r_at(n - 1).value / &seq.r_at(n).value;
        let floor = ratio.floor().to_integer();
        let ok = BigInt::from(seq.q_at(n + 1)) >= floor * BigInt::from(seq.q_at(n));
        (n, ok)
    });
    Ok(InequalityReport::from_checks(
        1,
        Quantifier::ForAll,
        (2, last_n),
        checks,
    ))
}
