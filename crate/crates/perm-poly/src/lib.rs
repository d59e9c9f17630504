//! Vector permutation polynomials over `(Z/2^n Z)^m`.
//!
//! A [`GenericVectorMap`] sends `(A_0, ..., A_{m-1})` to
//! `A_i' = A_i (2 A_i + mask(A_{p(i)})) mod 2^n`, where `p` is a coupling
//! permutation (by default `i + 1 mod m`) and `mask` is one of
//!
//! * [`Rule::Thm1`]: `x - (x mod 4) + 1`. The map is a bijection once the
//!   all-odd tuples are removed from the domain.
//! * [`Rule::Thm2`]: `4x + 1`. The map is a bijection of the whole space.
//!
//! Both claims are checked by enumeration in [`bijectivity_check`]; the
//! [`scaled`] module does the same for an 8-word, `n`-bit replica of the
//! VSC 2.1 round.

mod exhaustive;
mod map;
mod report;
pub mod scaled;

pub use exhaustive::{bijectivity_check, MAX_EXHAUSTIVE_BITS};
pub use map::{GenericVectorMap, ResidueVector, Rule};
pub use report::BijectivityReport;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("bit width n = {0} outside 1..=32")]
    WidthOutOfRange(u32),
    #[error("vector length m must be at least 1")]
    EmptyVector,
    #[error("expected a vector of {expected} elements, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("element {index} = {value} is not below 2^{n}")]
    ElementOutOfRange { index: usize, value: u64, n: u32 },
    #[error("coupling table must be a permutation of 0..{0}")]
    BadPartner(usize),
    #[error(
        "domain of 2^{bits} tuples exceeds the exhaustive limit of 2^{}",
        MAX_EXHAUSTIVE_BITS
    )]
    DomainTooLarge { bits: u32 },
    #[error("unknown rule `{0}` (expected thm1 or thm2)")]
    UnknownRule(String),
    #[error("scaled round needs 8n <= 24, got n = {0}")]
    ScaledWidth(u32),
}
