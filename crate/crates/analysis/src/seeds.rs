//! Low-weight initial conditions: key and IV taken together as one 256-bit
//! string, bit 0 being the most significant bit of key byte 0. The least
//! significant bit of the `D` key word is bit 127.

use serde::Serialize;
use vsc_core::{InitVector, KeyMaterial, KeyRule, Variant};

/// Position of the least significant bit of `kD` in the 256-bit condition.
pub const D_LSB_POSITION: usize = 127;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    /// Exactly one bit set.
    SingleOne,
    /// All bits set except two: the `D` LSB and one other.
    SingleZeroPaired,
}

fn split(bits: [u8; 32]) -> (KeyMaterial, InitVector) {
    let mut key = [0u8; 16];
    let mut iv = [0u8; 16];
    key.copy_from_slice(&bits[..16]);
    iv.copy_from_slice(&bits[16..]);
    (KeyMaterial::new(key), InitVector::new(iv))
}

fn toggle(bits: &mut [u8; 32], pos: usize) {
    bits[pos / 8] ^= 0x80 >> (pos % 8);
}

/// Initial conditions in increasing bit-position order.
///
/// With a single one bit, the condition whose only set bit is the `D` LSB is
/// dropped for VSC 2.0 (that bit is discarded, leaving an all-zero key).
/// The paired-zero set always fixes the `D` LSB as one of its two zeros.
pub fn pattern_seeds(kind: PatternKind, variant: Variant) -> Vec<(KeyMaterial, InitVector)> {
    let drops_d_lsb = variant.config().key_rule == KeyRule::DLsbZero;
    match kind {
        PatternKind::SingleOne => (0..256)
            .filter(|&p| !(drops_d_lsb && p == D_LSB_POSITION))
            .map(|p| {
                let mut bits = [0u8; 32];
                toggle(&mut bits, p);
                split(bits)
            })
            .collect(),
        PatternKind::SingleZeroPaired => (0..256)
            .filter(|&p| p != D_LSB_POSITION)
            .map(|p| {
                let mut bits = [0xffu8; 32];
                toggle(&mut bits, D_LSB_POSITION);
                toggle(&mut bits, p);
                split(bits)
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(k: &KeyMaterial, iv: &InitVector) -> u32 {
        k.bytes()
            .iter()
            .chain(iv.bytes())
            .map(|b| b.count_ones())
            .sum()
    }

    #[test]
    fn counts() {
        assert_eq!(
            pattern_seeds(PatternKind::SingleOne, Variant::Vsc20).len(),
            255
        );
        assert_eq!(
            pattern_seeds(PatternKind::SingleOne, Variant::Vsc21).len(),
            256
        );
        assert_eq!(
            pattern_seeds(PatternKind::SingleOne, Variant::Vsc128).len(),
            256
        );
        assert_eq!(
            pattern_seeds(PatternKind::SingleZeroPaired, Variant::Vsc20).len(),
            255
        );
    }

    #[test]
    fn weights_and_d_bit() {
        for (k, iv) in pattern_seeds(PatternKind::SingleOne, Variant::Vsc20) {
            assert_eq!(weight(&k, &iv), 1);
            assert!(!k.d_lsb());
        }
        for (k, iv) in pattern_seeds(PatternKind::SingleZeroPaired, Variant::Vsc21) {
            assert_eq!(weight(&k, &iv), 254);
            assert!(!k.d_lsb());
        }
        let first = pattern_seeds(PatternKind::SingleOne, Variant::Vsc21)[0];
        assert_eq!(first.0.bytes()[0], 0x80);
        let d_only = pattern_seeds(PatternKind::SingleOne, Variant::Vsc21)[D_LSB_POSITION];
        assert!(d_only.0.d_lsb());
    }

    #[test]
    fn conditions_are_distinct() {
        for kind in [PatternKind::SingleOne, PatternKind::SingleZeroPaired] {
            let v = pattern_seeds(kind, Variant::Vsc20);
            let set: std::collections::HashSet<_> = v.iter().collect();
            assert_eq!(set.len(), v.len());
        }
    }
}
