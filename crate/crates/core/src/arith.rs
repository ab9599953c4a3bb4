//! Exact rational vectors, torus reduction, and torus distances under the
//! L¹/L²/L∞ norms.
//!
//! Distances are always exact rationals. For L² the *squared* distance is
//! stored, so every comparison stays inside ℚ; downstream inequalities on L²
//! distances are restated on squares at each use site.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, the scalar type of the whole crate.
pub type Rational = BigRational;

/// Parse a rational from `"p/q"` or a bare integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

/// Serde helper: rationals serialize as `"p/q"` strings, never floats.
pub mod ratio_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// The three norms under which all comparisons are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormKind {
    #[serde(rename = "l1")]
    L1,
    #[serde(rename = "l2")]
    L2,
    #[serde(rename = "linf")]
    Linf,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NormKind::L1 => "l1",
            NormKind::L2 => "l2",
            NormKind::Linf => "linf",
        };
        f.write_str(s)
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(NormKind::L1),
            "l2" => Ok(NormKind::L2),
            "linf" | "loo" | "sup" => Ok(NormKind::Linf),
            other => Err(Error::Parse(format!("unknown norm `{other}`"))),
        }
    }
}

/// A point of ℚ^d, coordinates kept in lowest terms by the `Ratio` type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    coords: Vec<Rational>,
}

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self { coords })
    }

    /// Parse a comma-separated tuple such as `"2/7,3/11"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// lcm of the coordinate denominators; the period of the rational orbit.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    /// Coordinate-wise multiple `k·v`.
    pub fn scaled(&self, k: &BigInt) -> Self {
        let k = Rational::from(k.clone());
        Self {
            coords: self.coords.iter().map(|c| c * &k).collect(),
        }
    }

    /// Coordinate-wise sum; used by translation-invariance checks.
    pub fn translated(&self, t: &RationalVector) -> Result<Self> {
        if self.dim() != t.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: t.dim(),
            });
        }
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&t.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for RationalVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coords = strings
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RationalVector::new(coords).map_err(serde::de::Error::custom)
    }
}

/// A point of the d-torus with every coordinate in [0,1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    coords: Vec<Rational>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        for c in &coords {
            if c.is_negative() || *c >= Rational::one() {
                return Err(Error::CoordinateOutOfRange(c.to_string()));
            }
        }
        Ok(Self { coords })
    }

    pub fn origin(d: usize) -> Self {
        Self {
            coords: vec![Rational::zero(); d.max(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Reduce a rational vector mod ℤ^d: each coordinate drops to `c - ⌊c⌋`.
pub fn torus_reduce(v: &RationalVector) -> TorusPoint {
    TorusPoint {
        coords: v.coords.iter().map(|c| c - c.floor()).collect(),
    }
}

/// Exact nonnegative distance tagged by norm.
///
/// For L² the squared distance is stored so the value stays rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DistanceValue {
    pub norm: NormKind,
    #[serde(with = "ratio_string")]
    pub value: Rational,
}

impl DistanceValue {
    pub fn new(norm: NormKind, value: Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::Invalid(format!("negative distance {value}")));
        }
        Ok(Self { norm, value })
    }

    pub fn zero(norm: NormKind) -> Self {
        Self {
            norm,
            value: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn compare(&self, other: &DistanceValue) -> Result<Ordering> {
        if self.norm != other.norm {
            return Err(Error::NormMismatch {
                left: self.norm,
                right: other.norm,
            });
        }
        Ok(self.value.cmp(&other.value))
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.norm)
    }
}

/// Total order on same-norm distances; errors on a norm-tag mismatch.
pub fn compare_distance(a: &DistanceValue, b: &DistanceValue) -> Result<Ordering> {
    a.compare(b)
}

/// Distance from a coordinate difference in (-1,1) to its nearest integer.
fn coord_wrap(diff: &Rational) -> Rational {
    let a = diff.abs();
    let complement = Rational::one() - &a;
    if a <= complement {
        a
    } else {
        complement
    }
}

/// min over t ∈ ℤ^d of |x−y−t| in the given norm (squared for L²).
///
/// The minimizing translate is found coordinate-wise: each coordinate of
/// x−y lies in (−1,1), and L¹/L²/L∞ are coordinate-wise monotone, so
/// rounding each coordinate to its nearest integer is exact.
pub fn torus_dist(x: &TorusPoint, y: &TorusPoint, norm: NormKind) -> Result<DistanceValue> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let wraps = x
        .coords
        .iter()
        .zip(&y.coords)
        .map(|(a, b)| coord_wrap(&(a - b)));
    let value = match norm {
        NormKind::L1 => wraps.fold(Rational::zero(), |acc, w| acc + w),
        NormKind::L2 => wraps.fold(Rational::zero(), |acc, w| acc + &w * &w),
        NormKind::Linf => wraps.fold(Rational::zero(), |acc, w| acc.max(w)),
    };
    Ok(DistanceValue { norm, value })
}
