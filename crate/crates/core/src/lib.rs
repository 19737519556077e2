//! Exact-arithmetic toolkit for deciding whether secant varieties of
//! varieties of completely decomposable forms have the expected dimension.
//!
//! The pipeline is: reduce a dimension question to the rank of a coefficient
//! matrix over a prime field (Terracini-style tangent spans), compute that
//! rank exactly, and drive families of such checks through induction schemes
//! (restriction induction, splitting graphs, small-s sweeps) so that a finite
//! batch of ranks certifies infinitely many cases.
//!
//! Random specialization over GF(p) yields one-sided certificates: a full-rank
//! witness proves nondefectivity, while a rank shortfall is merely
//! inconclusive (except for quadrics, where a closed form settles defectivity
//! exactly).

pub mod cert;
pub mod forms;
pub mod gfp;
pub mod induction;
pub mod numbers;
pub mod secant;
pub mod statements;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid prime modulus {0}: need a prime p with 2 < p < 2^31")]
    InvalidPrime(u64),
    #[error("inverse of zero residue")]
    ZeroInverse,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("generators do not share a monomial basis")]
    MixedBases,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("matrix cell budget exceeded: {needed} cells > budget {budget}")]
    Capacity { needed: u64, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("argument outside validity range: {0}")]
    OutOfRange(String),
    #[error("non-integer value: {0}")]
    NonInteger(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// SplitMix64 step, used to derive per-attempt and per-case seeds from a base
/// seed so that every evaluation is reproducible from the recorded values.
pub fn mix_seed(state: u64, salt: u64) -> u64 {
    let mut z = state
        .wrapping_add(0x9e3779b97f4a7c15)
        .wrapping_add(salt.wrapping_mul(0xbf58476d1ce4e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Stable 64-bit hash of a label (FNV-1a); used with [`mix_seed`] to give each
/// case in a sweep its own deterministic seed.
pub fn hash_label(label: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
