//! Exact computation of Atiyah-Singer characteristic classes for
//! Z/p-equivariant vector bundles, p an odd prime.
//!
//! Everything is computed over exact rationals (or the cyclotomic field
//! Q(zeta_p)); floating point appears only as an optional sanity channel.
//! The main layers, bottom to top:
//!
//! - [`cyclotomic`]: arithmetic in Q(zeta_p) with the Galois action.
//! - [`series`]: truncated formal power series; the per-eigenvalue
//!   generating series and the L-genus series.
//! - [`symfun`]: symmetric-function transitions, Newton power sums, tau
//!   coefficient tables, and the generic multiplicative-sequence engine.
//! - [`cohomology`]: finite graded commutative rings modeling even-degree
//!   rational cohomology, with the fundamental-class pairing.
//! - [`asclass`]: eigenbundle Chern data and the characteristic-class
//!   operations (M-classes, A-factors, vanishing test, Chern character,
//!   Pontryagin/Euler classes, character values).
//! - [`relations`]: prime profiles and exact Q-linear algebra on tau
//!   vectors (span dimensions, integer kernel relations).
//! - [`families`]: constructive recipes (exponential Chern data,
//!   nilpotence checks, vanishing families, the finiteness demo).
//! - [`cli`]: the command-line frontend used by the `as-kit` binary.

pub mod asclass;
pub mod cli;
pub mod cohomology;
pub mod cyclotomic;
pub mod families;
pub mod json;
mod linalg;
pub mod relations;
pub mod series;
pub mod symfun;

pub use asclass::{EigenbundleData, GBundleChernData};
pub use cohomology::{CohomologyRing, RingElement};
pub use cyclotomic::CyclotomicNumber;
pub use series::TruncatedSeries;
pub use symfun::{Partition, TauTable};

/// Default cap on partition weights and series truncation orders.
pub const DEFAULT_WEIGHT_CAP: u32 = 16;

/// Environment variable overriding [`DEFAULT_WEIGHT_CAP`].
pub const WEIGHT_CAP_ENV: &str = "AS_KIT_WEIGHT_CAP";

/// Active weight/order cap: `AS_KIT_WEIGHT_CAP` if set and valid, else 16.
pub fn weight_cap() -> u32 {
    std::env::var(WEIGHT_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_WEIGHT_CAP)
}

/// Errors shared by the library layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: Q(zeta_{0}) vs Q(zeta_{1})")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("expected {expected} coordinates for p = {p}, got {got}")]
    CoordinateCount { p: u64, expected: usize, got: usize },
    #[error("galois exponent {n} is not invertible modulo {p}")]
    InvalidGaloisExponent { n: i64, p: u64 },
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series is not invertible: zero constant term")]
    NotInvertible,
    #[error("series too short: order {have} < required {need}")]
    SeriesTooShort { have: usize, need: usize },
    #[error("eigenvalue index {k} out of range 1..={max}")]
    EigenIndexOutOfRange { k: u64, max: u64 },
    #[error("weight {weight} exceeds the cap {cap}")]
    WeightAboveCap { weight: u32, cap: u32 },
    #[error("ring validation failed: {0}")]
    RingValidation(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("structural mismatch: {0}")]
    StructuralMismatch(String),
    #[error("no relation exists: 2 has even order modulo {0}")]
    NoRelationExists(u64),
    #[error("nilpotence precondition fails: {0}")]
    NilpotenceViolated(String),
    #[error("expected a homogeneous element: {0}")]
    NonHomogeneous(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
