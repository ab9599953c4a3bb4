//! Acceptance gate: twelve exact, zero-tolerance checks that exercise every
//! module against independent oracles. Each test prints one PASS line; run
//! with `cargo test --test acceptance -- --nocapture` to see them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use kron_core::{
    bracketing_count, compute_best_approximations, compute_until_record_exceeds, contact_number,
    convergent_value, count_distinct, gap_spectrum, golden_cf, halving_check,
    nearest_distance_fast, orbit_distance, ratio_floor_check, sample_alpha, sample_doubling_violations,
    sample_rng, search_high_g, sqrt2_cf, torus_dist, torus_reduce, verify_sum_inequality,
    BestApproxSequence, Error, NormKind, Quantifier, Rational, RationalVector, SpectrumSweep,
    TorusPoint, DEFAULT_PRIME,
};

const DEEP_HORIZON: u64 = 1_000_000;

/// Ten grid alphas with prime denominator, deterministically seeded per d.
fn random_alphas(d: usize, count: u64) -> Vec<RationalVector> {
    (0..count)
        .map(|i| {
            let mut rng = sample_rng(1_000 * d as u64, i);
            sample_alpha(d, DEFAULT_PRIME, &mut rng).unwrap()
        })
        .collect()
}

fn golden_coord(depth: usize) -> Rational {
    convergent_value(&golden_cf(), depth).unwrap()
}

fn sqrt2_coord(depth: usize) -> Rational {
    convergent_value(&sqrt2_cf(), depth).unwrap()
}

/// Ten constructor-based alphas per dimension, depths 30 and up.
fn constructor_alphas(d: usize) -> Vec<RationalVector> {
    match d {
        1 => (30..35)
            .map(|k| RationalVector::new(vec![golden_coord(k)]).unwrap())
            .chain((30..35).map(|k| RationalVector::new(vec![sqrt2_coord(k)]).unwrap()))
            .collect(),
        2 => (0..5)
            .map(|i| {
                RationalVector::new(vec![golden_coord(30 + i), sqrt2_coord(30 + i)]).unwrap()
            })
            .chain((0..5).map(|i| {
                RationalVector::new(vec![sqrt2_coord(30 + i), golden_coord(31 + i)]).unwrap()
            }))
            .collect(),
        _ => panic!("constructor alphas defined for d in {{1,2}}"),
    }
}

fn mixed_alphas(d: usize) -> Vec<RationalVector> {
    let mut v = random_alphas(d, 10);
    v.extend(constructor_alphas(d));
    v
}

type SeqCache = Mutex<HashMap<(usize, NormKind), Arc<Vec<BestApproxSequence>>>>;

/// Best-approximation sequences scanned to q_max = 10^6 for the ten random
/// alphas of dimension d, shared across the inequality criteria.
fn deep_sequences(d: usize, norm: NormKind) -> Arc<Vec<BestApproxSequence>> {
    static CACHE: OnceLock<SeqCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(seqs) = cache.lock().unwrap().get(&(d, norm)) {
        return seqs.clone();
    }
    let seqs: Vec<BestApproxSequence> = random_alphas(d, 10)
        .iter()
        .map(|alpha| compute_best_approximations(alpha, norm, DEEP_HORIZON).unwrap())
        .collect();
    let seqs = Arc::new(seqs);
    cache
        .lock()
        .unwrap()
        .insert((d, norm), seqs.clone());
    seqs
}

#[test]
fn criterion_01_bracketing_count_equals_oracle() {
    for d in [1usize, 2] {
        for alpha in mixed_alphas(d) {
            let seq = compute_until_record_exceeds(&alpha, NormKind::Linf, 1_000, u64::MAX).unwrap();
            let mut sweep = SpectrumSweep::new(&alpha, NormKind::Linf).unwrap();
            sweep.advance_to(2).unwrap();
            for n in 2..=1_000u64 {
                if n > 2 {
                    sweep.advance().unwrap();
                }
                assert_eq!(
                    bracketing_count(&seq, n).unwrap(),
                    sweep.distinct_count(),
                    "count mismatch at alpha={alpha} N={n}"
                );
            }
        }
    }
    println!("criterion 01 (bracketing count == oracle count, d=1,2, N<=1000): PASS");
}

#[test]
fn criterion_02_fast_distance_equals_oracle() {
    for d in [1usize, 2] {
        for alpha in mixed_alphas(d) {
            let seq = compute_best_approximations(&alpha, NormKind::Linf, 500).unwrap();
            let mut sweep = SpectrumSweep::new(&alpha, NormKind::Linf).unwrap();
            for n in 1..=500u64 {
                if n > 1 {
                    sweep.advance().unwrap();
                }
                for q in 0..=n {
                    let fast = nearest_distance_fast(&seq, q, n).unwrap();
                    let oracle = sweep.d_value(q).unwrap();
                    assert_eq!(
                        fast.value, oracle.value,
                        "D_q mismatch at alpha={alpha} q={q} N={n}"
                    );
                }
            }
        }
    }
    println!("criterion 02 (fast D_q == oracle D_q, q<=N<=500): PASS");
}

#[test]
fn criterion_03_one_dim_count_at_most_three() {
    for alpha in mixed_alphas(1) {
        let seq = compute_until_record_exceeds(&alpha, NormKind::Linf, 1_000, u64::MAX).unwrap();
        for n in 2..=1_000u64 {
            let g = bracketing_count(&seq, n).unwrap();
            assert!(g <= 3, "g={g} > 3 at alpha={alpha} N={n}");
        }
    }
    println!("criterion 03 (d=1 count never exceeds 3): PASS");
}

#[test]
fn criterion_04_count_bound_two_pow_d_plus_one() {
    for d in [1usize, 2, 3] {
        let bound = (1u64 << d) + 1;
        for alpha in random_alphas(d, 10) {
            let seq = compute_until_record_exceeds(&alpha, NormKind::Linf, 10_000, u64::MAX).unwrap();
            for n in 2..=10_000u64 {
                let g = bracketing_count(&seq, n).unwrap();
                assert!(g <= bound, "g={g} > {bound} at d={d} alpha={alpha} N={n}");
            }
        }
    }
    println!("criterion 04 (sup-norm count <= 2^d + 1, d<=3, N<=10^4): PASS");
}

/// Check q_(n+shift) >= q_(n+1) + q_n over every sequence, tolerating
/// horizons too short to reach the shift (those contribute no checked
/// indices, which is not a violation). Returns the number of checked indices.
fn checked_sum_inequality(seqs: &[BestApproxSequence], shift: u64, label: &str) -> usize {
    let mut checked = 0usize;
    for seq in seqs {
        match verify_sum_inequality(seq, shift, Quantifier::ForAll) {
            Ok(report) => {
                assert!(
                    report.passed && report.violations.is_empty(),
                    "violations {:?} at {label} alpha={}",
                    report.violations,
                    seq.alpha()
                );
                checked += report.checked_range.1;
            }
            Err(Error::SequenceTooShort { .. }) => {}
            Err(e) => panic!("unexpected error at {label}: {e}"),
        }
    }
    checked
}

#[test]
fn criterion_05_sum_inequality_shift_two_pow_d() {
    let mut total = 0usize;
    for d in [1usize, 2, 3] {
        let shift = 1u64 << d;
        let seqs = deep_sequences(d, NormKind::Linf);
        total += checked_sum_inequality(&seqs, shift, &format!("d={d} shift={shift}"));
    }
    assert!(total > 0);
    println!("criterion 05 (q_(n+2^d) >= q_(n+1)+q_n, sup norm, q<=10^6, {total} indices): PASS");
}

#[test]
fn criterion_06_sum_inequality_shift_four_euclidean() {
    let seqs = deep_sequences(2, NormKind::L2);
    let total = checked_sum_inequality(&seqs, 4, "Euclidean d=2 shift=4");
    assert!(total > 0);
    println!("criterion 06 (q_(n+4) >= q_(n+1)+q_n, Euclidean d=2, q<=10^6, {total} indices): PASS");
}

#[test]
fn criterion_07_sum_inequality_contact_shift() {
    let mut total = 0usize;
    for norm in [NormKind::Linf, NormKind::L2] {
        for d in [1usize, 2, 3] {
            let k = contact_number(norm, d as u32).unwrap();
            let seqs = deep_sequences(d, norm);
            total += checked_sum_inequality(&seqs, k, &format!("norm={norm} d={d} K={k}"));
        }
    }
    assert!(total > 0);
    println!("criterion 07 (q_(n+K) >= q_(n+1)+q_n with contact-number K, {total} indices): PASS");
}

#[test]
fn criterion_08_quadratic_window_extremes() {
    let golden = RationalVector::new(vec![golden_coord(30)]).unwrap();
    let stats = kron_core::window_stats(&golden, NormKind::Linf, 100, 2_000, true).unwrap();
    assert_eq!(stats.window_min, 2, "golden window min");
    assert_eq!(stats.window_max, 3, "golden window max");

    let sqrt2 = RationalVector::new(vec![sqrt2_coord(30)]).unwrap();
    let stats = kron_core::window_stats(&sqrt2, NormKind::Linf, 100, 2_000, true).unwrap();
    assert_eq!(stats.window_min, 1, "sqrt2 window min");
    assert_eq!(stats.window_max, 2, "sqrt2 window max");
    println!("criterion 08 (golden window [2,3], sqrt2 window [1,2] on N in [100,2000]): PASS");
}

#[test]
fn criterion_09_halving_inequality() {
    let mut total = 0usize;
    for norm in [NormKind::Linf, NormKind::L2] {
        for (d, k) in [(1usize, 5u64), (2, 25)] {
            for seq in deep_sequences(d, norm).iter() {
                match halving_check(seq, k) {
                    Ok(report) => {
                        assert!(
                            report.passed,
                            "violations {:?} at norm={norm} d={d} alpha={}",
                            report.violations,
                            seq.alpha()
                        );
                        total += report.checked_range.1;
                    }
                    // A horizon with fewer than K+1 records offers no index
                    // to check; that is not a violation.
                    Err(Error::SequenceTooShort { .. }) => {}
                    Err(e) => panic!("unexpected error: {e}"),
                }
            }
        }
    }
    assert!(total > 0);
    println!("criterion 09 (r_(n+5^d) <= r_n/2 for d=1,2, q<=10^6, {total} indices): PASS");
}

#[test]
fn criterion_10_ratio_floor_bound() {
    for d in [1usize, 2, 3] {
        for seq in deep_sequences(d, NormKind::Linf).iter() {
            let report = ratio_floor_check(seq).unwrap();
            assert!(
                report.passed,
                "violations {:?} at d={d} alpha={}",
                report.violations,
                seq.alpha()
            );
        }
    }
    println!("criterion 10 (q_(n+1) >= floor(r_(n-1)/r_n) * q_n, sup norm): PASS");
}

#[test]
fn criterion_11_search_finds_verified_witness() {
    let witnesses =
        search_high_g(2, NormKind::Linf, 3, 200, 11, 2_000, DEFAULT_PRIME).unwrap();
    assert!(!witnesses.is_empty(), "no witness with g >= 3 found");
    assert!(witnesses.iter().all(|w| w.verified_by_oracle && w.g >= 3));
    println!(
        "criterion 11 (search located {} oracle-verified witnesses with g >= 3, d=2): PASS",
        witnesses.len()
    );
}

#[test]
fn criterion_12_randomized_property_suite() {
    let prime = 9_973u64; // small prime grid keeps the brute-force oracle cheap

    // Symmetry and translation invariance of the torus metric.
    for i in 0..1_000u64 {
        let mut rng = sample_rng(99, i);
        let d = 1 + (i % 3) as usize;
        let x = torus_reduce(&sample_alpha(d, prime, &mut rng).unwrap());
        let y = torus_reduce(&sample_alpha(d, prime, &mut rng).unwrap());
        let t = sample_alpha(d, prime, &mut rng).unwrap();
        for norm in [NormKind::L1, NormKind::L2, NormKind::Linf] {
            let dxy = torus_dist(&x, &y, norm).unwrap();
            let dyx = torus_dist(&y, &x, norm).unwrap();
            assert_eq!(dxy.value, dyx.value, "symmetry failed at case {i}");
            let xt = torus_reduce(&translate(&x, &t));
            let yt = torus_reduce(&translate(&y, &t));
            let dt = torus_dist(&xt, &yt, norm).unwrap();
            assert_eq!(dxy.value, dt.value, "translation invariance failed at case {i}");
        }
    }

    // Record property of the scanned sequence, on small grids where every
    // intermediate q can be checked directly.
    for i in 0..1_000u64 {
        let mut rng = sample_rng(101, i);
        let d = 1 + (i % 2) as usize;
        let alpha = sample_alpha(d, 211, &mut rng).unwrap();
        let norm = [NormKind::L1, NormKind::L2, NormKind::Linf][(i % 3) as usize];
        let seq = compute_best_approximations(&alpha, norm, 60).unwrap();
        let mut prev_q = 0u64;
        for (idx, term) in seq.terms().iter().enumerate() {
            for q in prev_q + 1..term.q {
                let between = orbit_distance(&alpha, q, norm);
                if idx > 0 {
                    assert!(
                        between.value >= seq.r_at(idx).value,
                        "record property failed at case {i}, q={q}"
                    );
                }
            }
            if idx > 0 {
                assert!(term.q > prev_q && term.r.value < seq.r_at(idx).value);
            }
            prev_q = term.q;
        }
    }

    // Monotonicity: D_q(N) never increases as N grows.
    for i in 0..1_000u64 {
        let mut rng = sample_rng(103, i);
        let d = 1 + (i % 2) as usize;
        let alpha = sample_alpha(d, prime, &mut rng).unwrap();
        let norm = [NormKind::L1, NormKind::L2, NormKind::Linf][(i % 3) as usize];
        let mut sweep = SpectrumSweep::new(&alpha, norm).unwrap();
        let mut prev: Vec<Rational> = vec![sweep.d_value(0).unwrap().value, sweep.d_value(1).unwrap().value];
        for n in 2..=25u64 {
            sweep.advance().unwrap();
            for q in 0..n {
                let cur = sweep.d_value(q).unwrap().value;
                assert!(cur <= prev[q as usize], "monotonicity failed at case {i}, q={q}, N={n}");
                prev[q as usize] = cur;
            }
            prev.push(sweep.d_value(n).unwrap().value);
        }
        // Spectrum bookkeeping: multiplicities over 0..=N sum to N+1.
        let s = sweep.spectrum();
        let total: u64 = s.entries.iter().map(|(_, m)| m).sum();
        assert_eq!(total, 26);
        assert_eq!(count_distinct(&s), s.entries.len() as u64);
    }

    // Determinism: identical seeds reproduce identical outputs end to end.
    for i in 0..1_000u64 {
        let mut a = sample_rng(107, i);
        let mut b = sample_rng(107, i);
        let va = sample_alpha(2, prime, &mut a).unwrap();
        let vb = sample_alpha(2, prime, &mut b).unwrap();
        assert_eq!(va, vb, "sampling not deterministic at case {i}");
    }
    let r1 = sample_doubling_violations(1, NormKind::Linf, 1, 5, 13, 2_000, DEFAULT_PRIME).unwrap();
    let r2 = sample_doubling_violations(1, NormKind::Linf, 1, 5, 13, 2_000, DEFAULT_PRIME).unwrap();
    assert_eq!(r1, r2, "sampling report not deterministic");

    // Spectrum agreement between the one-shot and incremental routes.
    for i in 0..200u64 {
        let mut rng = sample_rng(109, i);
        let alpha = sample_alpha(1 + (i % 2) as usize, 409, &mut rng).unwrap();
        let norm = [NormKind::L1, NormKind::L2, NormKind::Linf][(i % 3) as usize];
        let n = 2 + i % 20;
        let s = gap_spectrum(&alpha, norm, n).unwrap();
        let mut sweep = SpectrumSweep::new(&alpha, norm).unwrap();
        sweep.advance_to(n).unwrap();
        assert_eq!(s, sweep.spectrum());
    }
    println!("criterion 12 (randomized invariant suite, >=1000 cases per property): PASS");
}

fn translate(x: &TorusPoint, t: &RationalVector) -> RationalVector {
    let coords: Vec<Rational> = x
        .coords()
        .iter()
        .zip(t.coords())
        .map(|(a, b)| a + b)
        .collect();
    RationalVector::new(coords).unwrap()
}
