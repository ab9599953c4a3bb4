//! Best Diophantine approximation sequences and nearest-distance gap
//! statistics of Kronecker sequences {qα mod ℤ^d} on the d-torus, computed
//! in exact rational arithmetic.
//!
//! Everything is built on two independent routes to the same quantities: a
//! brute-force enumeration oracle and a fast path through the
//! best-approximation sequence. The crate's tests hold the routes exactly
//! equal; there are no tolerances anywhere.

pub mod arith;
pub mod best_approx;
pub mod error;
pub mod gap_spectrum;
pub mod one_dim;
mod orbit;
pub mod search;

pub use arith::{
    compare_distance, parse_rational, torus_dist, torus_reduce, DistanceValue, NormKind,
    Rational, RationalVector, TorusPoint,
};
pub use best_approx::{
    compute_best_approximations, compute_until_record_exceeds, contact_number, doubling_index,
    halving_check, orbit_distance, ratio_floor_check, verify_sum_inequality, BestApproxSequence,
    InequalityReport, Quantifier, Term,
};
pub use error::{Error, Result};
pub use gap_spectrum::{
    bracketing_count, count_distinct, gap_spectrum, nearest_distance, nearest_distance_fast,
    window_stats, CountSeries, GapSpectrum, SpectrumSweep,
};
pub use one_dim::{
    cf_convergents, cf_expand, classify_liminf, classify_limsup, convergent_value, golden_cf,
    golden_equivalent, sqrt2_cf, CFDescription, CfKind, ConvergentRow, ConvergentTable,
};
pub use search::{
    count_doubling_violations, sample_alpha, sample_doubling_violations, sample_rng,
    search_high_g, SampleRow, SamplingReport, Witness, DEFAULT_PRIME,
};
