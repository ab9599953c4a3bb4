//! Continued-fraction machinery for dimension one: canonical expansions,
//! convergents, and the tail classifications of the limsup/liminf counts.
//!
//! Tail-dependent classifications accept only eventually periodic
//! descriptions; no finite truncation decides "infinitely many times".
//! Finite truncations are materialized as exact rational convergents and fed
//! to the scanning machinery instead.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfKind {
    Finite,
    EventuallyPeriodic,
}

/// A continued fraction `[a0; a1, a2, ...]`, either finite in canonical form
/// (final quotient ≥ 2) or eventually periodic with a primitive period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFDescription {
    a0: BigInt,
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

fn validate_quotients(qs: &[BigInt]) -> Result<()> {
    if qs.iter().any(|a| *a < BigInt::one()) {
        return Err(Error::Invalid("partial quotients must be ≥ 1".into()));
    }
    Ok(())
}

/// Shrink a period that is a repetition of a shorter one down to that one.
fn primitive_period(period: Vec<BigInt>) -> Vec<BigInt> {
    let len = period.len();
    for l in 1..len {
        if len % l == 0 && period.chunks(l).all(|c| c == &period[..l]) {
            return period[..l].to_vec();
        }
    }
    period
}

impl CFDescription {
    /// Finite expansion; `[..., a, 1]` is canonicalized to `[..., a+1]`.
    pub fn finite(a0: BigInt, mut quotients: Vec<BigInt>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::Invalid("finite expansion needs a quotient".into()));
        }
        validate_quotients(&quotients)?;
        if quotients.len() > 1 && quotients.last().unwrap().is_one() {
            quotients.pop();
            *quotients.last_mut().unwrap() += BigInt::one();
        }
        if quotients.len() == 1 && quotients[0].is_one() {
            return Err(Error::Invalid(
                "a lone quotient of 1 has no canonical form below 1".into(),
            ));
        }
        Ok(Self {
            a0,
            preperiod: quotients,
            period: vec![],
        })
    }

    pub fn periodic(a0: BigInt, preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("period must be nonempty".into()));
        }
        validate_quotients(&preperiod)?;
        validate_quotients(&period)?;
        Ok(Self {
            a0,
            preperiod,
            period: primitive_period(period),
        })
    }

    pub fn kind(&self) -> CfKind {
        if self.period.is_empty() {
            CfKind::Finite
        } else {
            CfKind::EventuallyPeriodic
        }
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    /// 1-based partial quotient a_n, unrolling the period as needed.
    pub fn quotient_at(&self, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::Invalid("quotient index is 1-based".into()));
        }
        if n <= self.preperiod.len() {
            return Ok(self.preperiod[n - 1].clone());
        }
        if self.period.is_empty() {
            return Err(Error::CfTooShort {
                needed: n,
                have: self.preperiod.len(),
            });
        }
        let offset = (n - self.preperiod.len() - 1) % self.period.len();
        Ok(self.period[offset].clone())
    }

    pub fn available_quotients(&self) -> Option<usize> {
        if self.period.is_empty() {
            Some(self.preperiod.len())
        } else {
            None
        }
    }
}

impl fmt::Display for CFDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};", self.a0)?;
        for (i, a) in self.preperiod.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        if !self.period.is_empty() {
            if !self.preperiod.is_empty() {
                f.write_str(",")?;
            }
            f.write_str("(")?;
            for (i, a) in self.period.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("]")
    }
}

impl FromStr for CFDescription {
    type Err = Error;

    /// Parses `"[0;1,1,2]"` and `"[0;3,(1,2)]"`; parentheses delimit the
    /// period.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in `{s}`"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("missing brackets"))?;
        let (a0_str, rest) = inner.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let a0: BigInt = a0_str
            .trim()
            .parse()
            .map_err(|_| bad("bad leading term"))?;
        let parse_list = |part: &str| -> Result<Vec<BigInt>> {
            part.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<BigInt>().map_err(|_| bad("bad quotient")))
                .collect()
        };
        if let Some(open) = rest.find('(') {
            let close = rest.rfind(')').ok_or_else(|| bad("unclosed period"))?;
            if close < open || !rest[close + 1..].trim().is_empty() {
                return Err(bad("malformed period"));
            }
            let preperiod = parse_list(&rest[..open])?;
            let period = parse_list(&rest[open + 1..close])?;
            Self::periodic(a0, preperiod, period)
        } else {
            Self::finite(a0, parse_list(rest)?)
        }
    }
}

/// Canonical finite expansion of a rational in (0,1) via the Euclidean
/// algorithm; the final quotient comes out ≥ 2 automatically.
pub fn cf_expand(x: &Rational) -> Result<CFDescription> {
    if !x.is_positive() || *x >= Rational::one() {
        return Err(Error::NotInUnitInterval);
    }
    let mut a = x.denom().clone();
    let mut b = x.numer().clone();
    let mut quotients = Vec::new();
    while !b.is_zero() {
        let q = &a / &b;
        let r = &a % &b;
        quotients.push(q);
        a = b;
        b = r;
    }
    CFDescription::finite(BigInt::zero(), quotients)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentRow {
    pub a: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

/// Convergents p_n/q_n of a continued fraction, n = 1..count.
///
/// Conventions: p_{-1} = 1, p_0 = a0, q_{-1} = 0, q_0 = 1, so
/// q_n = a_n·q_{n−1} + q_{n−2} with q strictly increasing from n ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentTable {
    pub entries: Vec<ConvergentRow>,
}

pub fn cf_convergents(cf: &CFDescription, count: usize) -> Result<ConvergentTable> {
    if count == 0 {
        return Err(Error::Invalid("count must be at least 1".into()));
    }
    if let Some(have) = cf.available_quotients() {
        if count > have {
            return Err(Error::CfTooShort {
                needed: count,
                have,
            });
        }
    }
    let mut p_prev = BigInt::one();
    let mut p_cur = cf.a0().clone();
    let mut q_prev = BigInt::zero();
    let mut q_cur = BigInt::one();
    let mut entries = Vec::with_capacity(count);
    for n in 1..=count {
        let a = cf.quotient_at(n)?;
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        entries.push(ConvergentRow {
            a,
            p: p_next.clone(),
            q: q_next.clone(),
        });
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
    }
    Ok(ConvergentTable { entries })
}

/// The exact rational p_depth/q_depth; the truncation bridge from a periodic
/// description to a scannable α.
pub fn convergent_value(cf: &CFDescription, depth: usize) -> Result<Rational> {
    let table = cf_convergents(cf, depth)?;
    let row = table.entries.last().unwrap();
    Ok(Rational::new(row.p.clone(), row.q.clone()))
}

fn require_periodic(cf: &CFDescription) -> Result<()> {
    match cf.kind() {
        CfKind::EventuallyPeriodic => Ok(()),
        CfKind::Finite => Err(Error::FiniteTail),
    }
}

/// limsup_N g(α,N) in d = 1: 3 when a_n = 1 recurs forever, else 2.
pub fn classify_limsup(cf: &CFDescription) -> Result<u64> {
    require_periodic(cf)?;
    if cf.period().iter().any(|a| a.is_one()) {
        Ok(3)
    } else {
        Ok(2)
    }
}

/// liminf_N g(α,N) in d = 1: 2 for golden-tail α, else 1.
pub fn classify_liminf(cf: &CFDescription) -> Result<u64> {
    require_periodic(cf)?;
    if golden_equivalent(cf)? {
        Ok(2)
    } else {
        Ok(1)
    }
}

/// True iff the tail is eventually all ones, i.e. the primitive period
/// is `[1]`.
pub fn golden_equivalent(cf: &CFDescription) -> Result<bool> {
    require_periodic(cf)?;
    Ok(cf.period() == [BigInt::one()])
}

/// φ − 1 = [0;(1)], whose convergents are ratios of Fibonacci numbers.
pub fn golden_cf() -> CFDescription {
    CFDescription::periodic(BigInt::zero(), vec![], vec![BigInt::one()]).unwrap()
}

/// √2 − 1 = [0;(2)].
pub fn sqrt2_cf() -> CFDescription {
    CFDescription::periodic(BigInt::zero(), vec![], vec![BigInt::from(2)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigs(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().map(|&v| big(v)).collect()
    }

    #[test]
    fn expand_examples() {
        let cf = cf_expand(&parse_rational("5/8").unwrap()).unwrap();
        assert_eq!(cf.preperiod(), bigs(&[1, 1, 1, 2]).as_slice());

        let cf = cf_expand(&parse_rational("89/144").unwrap()).unwrap();
        assert_eq!(cf.preperiod(), bigs(&[1, 1, 1, 1, 1, 1, 1, 1, 1, 2]).as_slice());

        let cf = cf_expand(&parse_rational("1/2").unwrap()).unwrap();
        assert_eq!(cf.preperiod(), bigs(&[2]).as_slice());
    }

    #[test]
    fn expand_rejects_outside_unit_interval() {
        assert!(matches!(
            cf_expand(&parse_rational("3/2").unwrap()),
            Err(Error::NotInUnitInterval)
        ));
        assert!(matches!(
            cf_expand(&parse_rational("0").unwrap()),
            Err(Error::NotInUnitInterval)
        ));
    }

    #[test]
    fn convergent_examples() {
        let t = cf_convergents(&golden_cf(), 5).unwrap();
        let qs: Vec<BigInt> = t.entries.iter().map(|r| r.q.clone()).collect();
        assert_eq!(qs, bigs(&[1, 2, 3, 5, 8]));

        let t = cf_convergents(&sqrt2_cf(), 4).unwrap();
        let qs: Vec<BigInt> = t.entries.iter().map(|r| r.q.clone()).collect();
        assert_eq!(qs, bigs(&[2, 5, 12, 29]));

        let cf = CFDescription::finite(big(0), bigs(&[3])).unwrap();
        let t = cf_convergents(&cf, 1).unwrap();
        assert_eq!(t.entries[0].q, big(3));
        assert!(matches!(
            cf_convergents(&cf, 2),
            Err(Error::CfTooShort { .. })
        ));
    }

    #[test]
    fn round_trip_reconstructs_value() {
        for s in ["5/8", "89/144", "7/19", "1/1000", "355/1131"] {
            let x = parse_rational(s).unwrap();
            let cf = cf_expand(&x).unwrap();
            let depth = cf.preperiod().len();
            assert_eq!(convergent_value(&cf, depth).unwrap(), x, "{s}");
        }
    }

    #[test]
    fn classify_examples() {
        let p1 = CFDescription::periodic(big(0), vec![], bigs(&[1])).unwrap();
        let p2 = CFDescription::periodic(big(0), vec![], bigs(&[2])).unwrap();
        let mixed = CFDescription::periodic(big(0), bigs(&[3, 7]), bigs(&[2, 1])).unwrap();
        let after9 = CFDescription::periodic(big(0), bigs(&[9]), bigs(&[1, 2])).unwrap();

        assert_eq!(classify_limsup(&p1).unwrap(), 3);
        assert_eq!(classify_limsup(&p2).unwrap(), 2);
        assert_eq!(classify_limsup(&mixed).unwrap(), 3);

        assert_eq!(classify_liminf(&p1).unwrap(), 2);
        assert_eq!(classify_liminf(&p2).unwrap(), 1);
        assert_eq!(classify_liminf(&after9).unwrap(), 1);

        // liminf = 2 forces limsup = 3.
        assert_eq!(classify_limsup(&p1).unwrap(), 3);
    }

    #[test]
    fn golden_equivalence_normalizes_period() {
        let doubled = CFDescription::periodic(big(0), bigs(&[5]), bigs(&[1, 1])).unwrap();
        assert!(golden_equivalent(&doubled).unwrap());
        let p2 = CFDescription::periodic(big(0), vec![], bigs(&[2])).unwrap();
        assert!(!golden_equivalent(&p2).unwrap());
        let finite = cf_expand(&parse_rational("5/8").unwrap()).unwrap();
        assert!(matches!(golden_equivalent(&finite), Err(Error::FiniteTail)));
        assert!(matches!(classify_limsup(&finite), Err(Error::FiniteTail)));
        assert!(matches!(classify_liminf(&finite), Err(Error::FiniteTail)));
    }

    #[test]
    fn parse_and_display() {
        for s in ["[0;1,1,2]", "[0;3,(1,2)]", "[0;(2)]", "[2;1,1,3]"] {
            let cf: CFDescription = s.parse().unwrap();
            assert_eq!(cf.to_string(), s);
        }
        let cf: CFDescription = "[0; 1, 1, 1, 1]".parse().unwrap();
        // Canonicalized: trailing 1 folds into the previous quotient.
        assert_eq!(cf.to_string(), "[0;1,1,2]");
        assert!("[0;1,1".parse::<CFDescription>().is_err());
        assert!("[0;0,2]".parse::<CFDescription>().is_err());
    }

    #[test]
    fn golden_truncation_is_fibonacci() {
        assert_eq!(
            convergent_value(&golden_cf(), 11).unwrap(),
            parse_rational("89/144").unwrap()
        );
    }
}
