//! Known-answer vector files.
//!
//! One vector per line, whitespace-separated `field=value` pairs:
//!
//! ```text
//! # comment
//! variant=vsc21 key=<32 hex> iv=<32 hex> block_index=0 keystream=<32 hex>
//! ```
//!
//! `block_index` counts keystream blocks from zero. Blank lines and anything
//! after `#` are ignored.

use std::fmt;

use crate::{InitVector, KeyMaterial, Keystream, Variant, VscError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatVector {
    pub variant: Variant,
    pub key: KeyMaterial,
    pub iv: InitVector,
    pub block_index: u64,
    pub keystream: [u8; 16],
}

impl KatVector {
    /// Builds the vector for block `block_index` from this implementation.
    pub fn compute(variant: Variant, key: KeyMaterial, iv: InitVector, block_index: u64) -> Self {
        let mut ks = Keystream::new(variant.config(), &key, &iv);
        let mut block = ks.next_block();
        for _ in 0..block_index {
            block = ks.next_block();
        }
        KatVector {
            variant,
            key,
            iv,
            block_index,
            keystream: block.to_bytes(),
        }
    }
}

impl fmt::Display for KatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variant={} key={} iv={} block_index={} keystream={}",
            self.variant,
            self.key.to_hex(),
            self.iv.to_hex(),
            self.block_index,
            hex::encode(self.keystream)
        )
    }
}

pub fn parse(text: &str) -> Result<Vec<KatVector>, VscError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_line(line).map_err(|reason| VscError::KatSyntax {
            line: n + 1,
            reason,
        })?);
    }
    Ok(out)
}

fn parse_line(line: &str) -> Result<KatVector, String> {
    let (mut variant, mut key, mut iv, mut index, mut stream) = (None, None, None, None, None);
    for field in line.split_whitespace() {
        let (name, value) = field
            .split_once('=')
            .ok_or_else(|| format!("expected field=value, found `{field}`"))?;
        let slot_taken = match name {
            "variant" => variant
                .replace(value.parse::<Variant>().map_err(|e| e.to_string())?)
                .is_some(),
            "key" => key
                .replace(KeyMaterial::from_hex(value).map_err(|e| format!("key: {e}"))?)
                .is_some(),
            "iv" => iv
                .replace(InitVector::from_hex(value).map_err(|e| format!("iv: {e}"))?)
                .is_some(),
            "block_index" => index
                .replace(
                    value
                        .parse::<u64>()
                        .map_err(|e| format!("block_index: {e}"))?,
                )
                .is_some(),
            "keystream" => {
                let block = KeyMaterial::from_hex(value).map_err(|e| format!("keystream: {e}"))?;
                stream.replace(*block.bytes()).is_some()
            }
            other => return Err(format!("unknown field `{other}`")),
        };
        if slot_taken {
            return Err(format!("duplicate field `{name}`"));
        }
    }
    Ok(KatVector {
        variant: variant.ok_or("missing field `variant`")?,
        key: key.ok_or("missing field `key`")?,
        iv: iv.ok_or("missing field `iv`")?,
        block_index: index.ok_or("missing field `block_index`")?,
        keystream: stream.ok_or("missing field `keystream`")?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatMismatch {
    pub expected: KatVector,
    pub actual: [u8; 16],
}

/// Recomputes every vector and returns the ones that disagree.
pub fn verify(vectors: &[KatVector]) -> Vec<KatMismatch> {
    vectors
        .iter()
        .filter_map(|v| {
            let got = KatVector::compute(v.variant, v.key, v.iv, v.block_index);
            (got.keystream != v.keystream).then(|| KatMismatch {
                expected: v.clone(),
                actual: got.keystream,
            })
        })
        .collect()
}
