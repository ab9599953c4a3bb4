use num::BigInt;
use thiserror::Error;

use crate::arith::NormKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vector must have at least one coordinate")]
    EmptyVector,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("cannot compare distances under different norms ({left} vs {right})")]
    NormMismatch { left: NormKind, right: NormKind },
    #[error("coordinate out of [0,1): {0}")]
    CoordinateOutOfRange(String),
    #[error("scan horizon {horizon} must stay strictly below the orbit period {period}")]
    HorizonGuard { horizon: u64, period: BigInt },
    #[error("alpha reduces to the zero point of the torus; the orbit is degenerate")]
    IntegralAlpha,
    #[error("sequence too short: need at least {needed} terms, have {have}")]
    SequenceTooShort { needed: usize, have: usize },
    #[error("operation requires the {expected} norm, but the sequence uses {got}")]
    WrongNorm { expected: NormKind, got: NormKind },
    #[error("sequence horizon {have} too short: need at least {needed}")]
    HorizonTooShort { needed: u64, have: u64 },
    #[error("horizon insufficient to bracket N={n}")]
    Unbracketable { n: u64 },
    #[error("orbit distance hit zero at q={q}; widen the horizon guard")]
    ZeroHit { q: u64 },
    #[error("continued fraction input must lie strictly between 0 and 1")]
    NotInUnitInterval,
    #[error("tail classification needs an eventually periodic continued fraction")]
    FiniteTail,
    #[error("continued fraction provides only {have} quotients, need {needed}")]
    CfTooShort { needed: usize, have: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
