//! Integer-state walker for the orbit {q·α mod ℤ^d} of a rational α.
//!
//! Coordinate i of q·α mod 1 is the fraction n_i/D_i with n_i = q·a_i mod D_i,
//! so the whole orbit advances by one modular addition per coordinate. All
//! distances are carried as integer numerators over a fixed common
//! denominator: lcm(D_i) for L¹/L∞, its square for L² (squared distances).
//! This keeps the hot loops in BigInt adds and compares while staying exact.

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

use crate::arith::{DistanceValue, NormKind, Rational, RationalVector};

pub(crate) struct Orbit {
    denoms: Vec<BigInt>,
    steps: Vec<BigInt>,
    pos: Vec<BigInt>,
    scales: Vec<BigInt>,
    lcm: BigInt,
    q: u64,
}

impl Orbit {
    pub fn new(alpha: &RationalVector) -> Self {
        let denoms: Vec<BigInt> = alpha.coords().iter().map(|c| c.denom().clone()).collect();
        let steps: Vec<BigInt> = alpha
            .coords()
            .iter()
            .map(|c| c.numer().mod_floor(c.denom()))
            .collect();
        let lcm = alpha.denominator_lcm();
        let scales: Vec<BigInt> = denoms.iter().map(|d| &lcm / d).collect();
        let pos = vec![BigInt::zero(); denoms.len()];
        Self {
            denoms,
            steps,
            pos,
            scales,
            lcm,
            q: 0,
        }
    }

    pub fn lcm(&self) -> &BigInt {
        &self.lcm
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Advance from q to q+1.
    pub fn advance(&mut self) {
        for i in 0..self.pos.len() {
            self.pos[i] += &self.steps[i];
            if self.pos[i] >= self.denoms[i] {
                self.pos[i] -= &self.denoms[i];
            }
        }
        self.q += 1;
    }

    /// Numerators of the current point over the per-coordinate denominators.
    pub fn point(&self) -> Vec<BigInt> {
        self.pos.clone()
    }

    /// Scaled numerator of dist(0, qα) over `common_denominator(norm)`.
    pub fn dist_to_zero_numerator(&self, norm: NormKind) -> BigInt {
        self.combine(self.pos.iter().enumerate().map(|(i, n)| {
            let wrapped = (&self.denoms[i] - n).min(n.clone());
            wrapped * &self.scales[i]
        }), norm)
    }

    /// Scaled numerator of the torus distance between two stored points.
    pub fn pair_dist_numerator(&self, a: &[BigInt], b: &[BigInt], norm: NormKind) -> BigInt {
        self.combine(a.iter().zip(b).enumerate().map(|(i, (x, y))| {
            let diff = (x - y).abs();
            let wrapped = (&self.denoms[i] - &diff).min(diff);
            wrapped * &self.scales[i]
        }), norm)
    }

    fn combine(&self, scaled: impl Iterator<Item = BigInt>, norm: NormKind) -> BigInt {
        match norm {
            NormKind::L1 => scaled.fold(BigInt::zero(), |acc, w| acc + w),
            NormKind::L2 => scaled.fold(BigInt::zero(), |acc, w| acc + &w * &w),
            NormKind::Linf => scaled.fold(BigInt::zero(), |acc, w| acc.max(w)),
        }
    }

    /// Denominator shared by every numerator this orbit produces for `norm`.
    pub fn common_denominator(&self, norm: NormKind) -> BigInt {
        match norm {
            NormKind::L2 => &self.lcm * &self.lcm,
            _ => self.lcm.clone(),
        }
    }

    /// Turn a scaled numerator back into an exact `DistanceValue`.
    pub fn distance_value(&self, numerator: BigInt, norm: NormKind) -> DistanceValue {
        DistanceValue {
            norm,
            value: Rational::new(numerator, self.common_denominator(norm)),
        }
    }
}
