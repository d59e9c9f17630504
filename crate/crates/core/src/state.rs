use std::fmt;

use crate::VscError;

/// `A, B, C, D` before key loading in the preprocessing variants.
pub const PREPROCESS_CONSTANTS: [u32; 4] = [0xfedc_ba98, 0x0123_4567, 0x89ab_cdef, 0x7654_3210];

/// The full 256-bit cipher state, words ordered `A, B, C, D, X, Y, Z, W`.
///
/// The order is significant: it is the most-significant-first layout of the
/// 256-bit string that the round rotates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CipherState {
    pub words: [u32; 8],
}

impl CipherState {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const D: usize = 3;
    pub const X: usize = 4;
    pub const Y: usize = 5;
    pub const Z: usize = 6;
    pub const W: usize = 7;

    pub const fn new(words: [u32; 8]) -> Self {
        CipherState { words }
    }

    pub const fn zero() -> Self {
        CipherState { words: [0; 8] }
    }

    pub fn d(&self) -> u32 {
        self.words[Self::D]
    }

    /// `(X, Y, Z, W)` as the block that would be emitted from this state.
    pub fn output_block(&self) -> KeystreamBlock {
        KeystreamBlock {
            words: [self.words[4], self.words[5], self.words[6], self.words[7]],
        }
    }
}

impl fmt::Debug for CipherState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CipherState[")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{w:08x}")?;
        }
        write!(f, "]")
    }
}

fn words_be(bytes: &[u8; 16]) -> [u32; 4] {
    let mut out = [0u32; 4];
    for (w, chunk) in out.iter_mut().zip(bytes.chunks_exact(4)) {
        *w = u32::from_be_bytes(chunk.try_into().unwrap());
    }
    out
}

fn parse_hex16(s: &str) -> Result<[u8; 16], VscError> {
    let s = s.trim();
    if s.len() != 32 {
        return Err(VscError::HexLength(s.len()));
    }
    let mut out = [0u8; 16];
    hex::decode_to_slice(s, &mut out)?;
    Ok(out)
}

/// A 128-bit secret key. Maps onto `A, B, C, D`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KeyMaterial {
    bytes: [u8; 16],
}

impl KeyMaterial {
    pub const fn new(bytes: [u8; 16]) -> Self {
        KeyMaterial { bytes }
    }

    pub fn from_hex(s: &str) -> Result<Self, VscError> {
        parse_hex16(s).map(Self::new)
    }

    pub fn from_words(words: [u32; 4]) -> Self {
        let mut bytes = [0u8; 16];
        for (chunk, w) in bytes.chunks_exact_mut(4).zip(words) {
            chunk.copy_from_slice(&w.to_be_bytes());
        }
        Self::new(bytes)
    }

    pub fn bytes(&self) -> &[u8; 16] {
        &self.bytes
    }

    /// `(kA, kB, kC, kD)`, big-endian.
    pub fn words(&self) -> [u32; 4] {
        words_be(&self.bytes)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.bytes)
    }

    /// Whether bit 0 of `kD` is set. VSC 2.0 discards this bit.
    pub fn d_lsb(&self) -> bool {
        self.bytes[15] & 1 == 1
    }

    /// Copy of this key with bit 0 of `kD` cleared.
    pub fn with_d_lsb_cleared(&self) -> Self {
        let mut bytes = self.bytes;
        bytes[15] &= 0xfe;
        Self::new(bytes)
    }
}

impl fmt::Debug for KeyMaterial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KeyMaterial({})", self.to_hex())
    }
}

/// A 128-bit initial vector. Maps onto `X, Y, Z, W`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct InitVector {
    bytes: [u8; 16],
}

impl InitVector {
    pub const fn new(bytes: [u8; 16]) -> Self {
        InitVector { bytes }
    }

    pub fn from_hex(s: &str) -> Result<Self, VscError> {
        parse_hex16(s).map(Self::new)
    }

    pub fn from_words(words: [u32; 4]) -> Self {
        Self::new(*KeyMaterial::from_words(words).bytes())
    }

    pub fn bytes(&self) -> &[u8; 16] {
        &self.bytes
    }

    pub fn words(&self) -> [u32; 4] {
        words_be(&self.bytes)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.bytes)
    }
}

impl fmt::Debug for InitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InitVector({})", self.to_hex())
    }
}

/// One 128-bit keystream block: `(X, Y, Z, W)` after a block's rounds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KeystreamBlock {
    pub words: [u32; 4],
}

impl KeystreamBlock {
    pub fn to_bytes(&self) -> [u8; 16] {
        *KeyMaterial::from_words(self.words).bytes()
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_bytes())
    }
}

impl fmt::Debug for KeystreamBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KeystreamBlock({})", self.to_hex())
    }
}
