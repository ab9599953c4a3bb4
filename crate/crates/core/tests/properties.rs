//! Property tests for the metric, the scanner, and the serializers.
//! Everything here cross-checks a production path against a brute-force
//! or round-trip oracle on randomized small inputs.

use num::{BigInt, BigRational, Signed, Zero};
use proptest::prelude::*;

use kron_core::{
    cf_convergents, cf_expand, bracketing_count, compute_best_approximations,
    compute_until_record_exceeds, convergent_value, orbit_distance, parse_rational, torus_dist,
    torus_reduce, DistanceValue, NormKind, Rational, RationalVector, SpectrumSweep, TorusPoint,
};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (0i64..200, 1i64..200).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn vector_strategy(d: usize) -> impl Strategy<Value = RationalVector> {
    proptest::collection::vec(rational_strategy(), d)
        .prop_map(|coords| RationalVector::new(coords).unwrap())
}

fn norm_strategy() -> impl Strategy<Value = NormKind> {
    prop_oneof![
        Just(NormKind::L1),
        Just(NormKind::L2),
        Just(NormKind::Linf)
    ]
}

/// Non-integral alpha on a small grid, suitable for short exact scans.
fn alpha_strategy(d: usize) -> impl Strategy<Value = RationalVector> {
    proptest::collection::vec((1i64..210, 0usize..4), d)
        .prop_map(|parts| {
            let denoms = [211i64, 223, 227, 229];
            let coords = parts
                .into_iter()
                .map(|(n, di)| Rational::new(BigInt::from(n), BigInt::from(denoms[di])))
                .collect();
            RationalVector::new(coords).unwrap()
        })
}

/// Distance by direct minimization over integer offsets, the definitional
/// oracle for the wrapped metric.
fn offset_oracle(x: &TorusPoint, y: &TorusPoint, norm: NormKind) -> Rational {
    let d = x.coords().len();
    let mut best: Option<Rational> = None;
    let mut offsets = vec![-2i64; d];
    loop {
        let mut acc = Rational::zero();
        for i in 0..d {
            let diff = (&x.coords()[i] - &y.coords()[i] - Rational::from(BigInt::from(offsets[i])))
                .abs();
            match norm {
                NormKind::L1 => acc += diff,
                NormKind::L2 => acc += &diff * &diff,
                NormKind::Linf => {
                    if diff > acc {
                        acc = diff;
                    }
                }
            }
        }
        if best.as_ref().map_or(true, |b| acc < *b) {
            best = Some(acc);
        }
        // Odometer over {-2,...,2}^d.
        let mut i = 0;
        loop {
            if i == d {
                return best.unwrap();
            }
            offsets[i] += 1;
            if offsets[i] <= 2 {
                break;
            }
            offsets[i] = -2;
            i += 1;
        }
    }
}

proptest! {
    // Failures are fully reproducible from the fixed RNG; no persistence file.
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn metric_symmetry_and_identity(
        a in vector_strategy(2),
        b in vector_strategy(2),
        norm in norm_strategy(),
    ) {
        let x = torus_reduce(&a);
        let y = torus_reduce(&b);
        let dxy = torus_dist(&x, &y, norm).unwrap();
        let dyx = torus_dist(&y, &x, norm).unwrap();
        prop_assert_eq!(&dxy.value, &dyx.value);
        let dxx = torus_dist(&x, &x, norm).unwrap();
        prop_assert!(dxx.value.is_zero());
        prop_assert!(dxy.value >= Rational::zero());
    }

    #[test]
    fn metric_matches_offset_oracle(
        a in vector_strategy(3),
        b in vector_strategy(3),
        norm in norm_strategy(),
    ) {
        let x = torus_reduce(&a);
        let y = torus_reduce(&b);
        let got = torus_dist(&x, &y, norm).unwrap();
        prop_assert_eq!(got.value, offset_oracle(&x, &y, norm));
    }

    #[test]
    fn metric_translation_invariance(
        a in vector_strategy(2),
        b in vector_strategy(2),
        t in vector_strategy(2),
        norm in norm_strategy(),
    ) {
        let shift = |v: &RationalVector| {
            let coords: Vec<Rational> = v
                .coords()
                .iter()
                .zip(t.coords())
                .map(|(c, s)| c + s)
                .collect();
            torus_reduce(&RationalVector::new(coords).unwrap())
        };
        let base = torus_dist(&torus_reduce(&a), &torus_reduce(&b), norm).unwrap();
        let moved = torus_dist(&shift(&a), &shift(&b), norm).unwrap();
        prop_assert_eq!(base.value, moved.value);
    }

    #[test]
    fn metric_triangle_inequality(
        a in vector_strategy(2),
        b in vector_strategy(2),
        c in vector_strategy(2),
        norm in norm_strategy(),
    ) {
        let x = torus_reduce(&a);
        let y = torus_reduce(&b);
        let z = torus_reduce(&c);
        let ab = torus_dist(&x, &y, norm).unwrap().value;
        let bc = torus_dist(&y, &z, norm).unwrap().value;
        let ac = torus_dist(&x, &z, norm).unwrap().value;
        match norm {
            NormKind::L2 => {
                // Stored values are squares: sqrt(ac) <= sqrt(ab) + sqrt(bc)
                // iff ac <= ab + bc, or (ac - ab - bc)^2 <= 4 ab bc.
                let slack = &ac - &ab - &bc;
                prop_assert!(
                    slack <= Rational::zero()
                        || &slack * &slack <= BigRational::from(BigInt::from(4)) * &ab * &bc
                );
            }
            _ => prop_assert!(ac <= &ab + &bc),
        }
    }

    #[test]
    fn scan_terms_are_strict_records(
        alpha in alpha_strategy(1),
        norm in norm_strategy(),
    ) {
        let q_max = 80u64;
        let seq = compute_best_approximations(&alpha, norm, q_max).unwrap();
        // Brute-force running strict minimum over the same range.
        let mut best: Option<Rational> = None;
        let mut expected: Vec<(u64, Rational)> = Vec::new();
        for q in 1..=q_max {
            let r = orbit_distance(&alpha, q, norm);
            if best.as_ref().map_or(true, |b| r.value < *b) {
                best = Some(r.value.clone());
                expected.push((q, r.value));
            }
        }
        let got: Vec<(u64, Rational)> = seq
            .terms()
            .iter()
            .map(|t| (t.q, t.r.value.clone()))
            .collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn bracketing_count_matches_sweep(
        alpha in alpha_strategy(2),
    ) {
        let norm = NormKind::Linf;
        let seq = compute_until_record_exceeds(&alpha, norm, 40, u64::MAX).unwrap();
        let mut sweep = SpectrumSweep::new(&alpha, norm).unwrap();
        for n in 2..=40u64 {
            sweep.advance().unwrap();
            prop_assert_eq!(bracketing_count(&seq, n).unwrap(), sweep.distinct_count());
        }
    }

    #[test]
    fn cf_expansion_round_trips(
        n in 1i64..500,
        d in 2i64..500,
    ) {
        prop_assume!(n < d);
        let x = Rational::new(BigInt::from(n), BigInt::from(d));
        let cf = cf_expand(&x).unwrap();
        let depth = cf.available_quotients().unwrap();
        prop_assert_eq!(convergent_value(&cf, depth).unwrap(), x);
        // Denominator recursion of the convergent table.
        let table = cf_convergents(&cf, depth).unwrap();
        for w in table.entries.windows(3) {
            prop_assert_eq!(&w[2].q, &(&w[2].a * &w[1].q + &w[0].q));
        }
    }

    #[test]
    fn record_file_round_trips(
        alpha in alpha_strategy(1),
        norm in norm_strategy(),
    ) {
        let seq = compute_best_approximations(&alpha, norm, 60).unwrap();
        let text = seq.to_records();
        let back = kron_core::BestApproxSequence::parse_records(&text).unwrap();
        prop_assert_eq!(seq, back);
    }

    #[test]
    fn distance_serde_round_trips(
        v in rational_strategy(),
        norm in norm_strategy(),
    ) {
        let d = DistanceValue::new(norm, v).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: DistanceValue = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(d, back);
    }

    #[test]
    fn rational_parsing_round_trips(
        n in 0i64..10_000,
        d in 1i64..10_000,
    ) {
        let r = Rational::new(BigInt::from(n), BigInt::from(d));
        let s = format!("{}/{}", r.numer(), r.denom());
        prop_assert_eq!(parse_rational(&s).unwrap(), r);
    }
}
