use thiserror::Error;

use crate::Variant;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VscError {
    /// VSC 2.0 rounds are only defined on states whose `D` word is even.
    #[error("VSC 2.0 state has odd D word {0:#010x}; the round requires D even")]
    OddD(u32),
    #[error("{0} has no IV preprocessing stage")]
    NoPreprocessing(Variant),
    #[error("unknown cipher variant `{0}` (expected vsc128, vsc20 or vsc21)")]
    UnknownVariant(String),
    #[error("expected exactly 32 hex digits, got {0}")]
    HexLength(usize),
    #[error("malformed hex string: {0}")]
    Hex(#[from] hex::FromHexError),
    #[error("known-answer file line {line}: {reason}")]
    KatSyntax { line: usize, reason: String },
}
