use std::fmt;
use std::str::FromStr;

use crate::VscError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Variant {
    Vsc128,
    Vsc20,
    Vsc21,
}

/// How the coupling word is forced to `1 mod 4` before multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskRule {
    /// `w - (w mod 4) + 1`: replace the two low bits with `01`.
    Clear2Set1,
    /// `4w + 1 mod 2^32`.
    Affine4xPlus1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationRule {
    /// 5-bit left rotation of the 256-bit concatenation `A..W`.
    PlainRot5,
    /// As `PlainRot5`, but the bits carried into `D` from `X` land one
    /// position higher, leaving bit 0 of `D` clear.
    Rot5DTwist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyRule {
    Full128,
    /// Bit 0 of the `D` key word is forced to zero (127-bit key).
    DLsbZero,
}

/// Per-variant parameters of the round pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariantConfig {
    pub variant: Variant,
    pub mask_rule: MaskRule,
    pub rotation_rule: RotationRule,
    pub preprocessing_rounds: usize,
    pub block_rounds: usize,
    pub key_rule: KeyRule,
}

impl VariantConfig {
    pub const VSC128: VariantConfig = VariantConfig {
        variant: Variant::Vsc128,
        mask_rule: MaskRule::Clear2Set1,
        rotation_rule: RotationRule::PlainRot5,
        preprocessing_rounds: 0,
        block_rounds: 8,
        key_rule: KeyRule::Full128,
    };

    pub const VSC20: VariantConfig = VariantConfig {
        variant: Variant::Vsc20,
        mask_rule: MaskRule::Clear2Set1,
        rotation_rule: RotationRule::Rot5DTwist,
        preprocessing_rounds: 30,
        block_rounds: 9,
        key_rule: KeyRule::DLsbZero,
    };

    pub const VSC21: VariantConfig = VariantConfig {
        variant: Variant::Vsc21,
        mask_rule: MaskRule::Affine4xPlus1,
        rotation_rule: RotationRule::PlainRot5,
        preprocessing_rounds: 30,
        block_rounds: 9,
        key_rule: KeyRule::Full128,
    };

    pub fn has_preprocessing(&self) -> bool {
        self.preprocessing_rounds > 0
    }
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Vsc128, Variant::Vsc20, Variant::Vsc21];

    pub const fn config(self) -> VariantConfig {
        match self {
            Variant::Vsc128 => VariantConfig::VSC128,
            Variant::Vsc20 => VariantConfig::VSC20,
            Variant::Vsc21 => VariantConfig::VSC21,
        }
    }

    /// Lowercase identifier used on the command line and in vector files.
    pub const fn name(self) -> &'static str {
        match self {
            Variant::Vsc128 => "vsc128",
            Variant::Vsc20 => "vsc20",
            Variant::Vsc21 => "vsc21",
        }
    }
}

impl From<Variant> for VariantConfig {
    fn from(v: Variant) -> Self {
        v.config()
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = VscError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "vsc128" => Ok(Variant::Vsc128),
            "vsc20" | "vsc2.0" => Ok(Variant::Vsc20),
            "vsc21" | "vsc2.1" => Ok(Variant::Vsc21),
            _ => Err(VscError::UnknownVariant(s.to_owned())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_table() {
        let c = Variant::Vsc128.config();
        assert_eq!(
            (
                c.mask_rule,
                c.rotation_rule,
                c.preprocessing_rounds,
                c.block_rounds,
                c.key_rule
            ),
            (
                MaskRule::Clear2Set1,
                RotationRule::PlainRot5,
                0,
                8,
                KeyRule::Full128
            )
        );
        let c = Variant::Vsc20.config();
        assert_eq!(
            (
                c.mask_rule,
                c.rotation_rule,
                c.preprocessing_rounds,
                c.block_rounds,
                c.key_rule
            ),
            (
                MaskRule::Clear2Set1,
                RotationRule::Rot5DTwist,
                30,
                9,
                KeyRule::DLsbZero
            )
        );
        let c = Variant::Vsc21.config();
        assert_eq!(
            (
                c.mask_rule,
                c.rotation_rule,
                c.preprocessing_rounds,
                c.block_rounds,
                c.key_rule
            ),
            (
                MaskRule::Affine4xPlus1,
                RotationRule::PlainRot5,
                30,
                9,
                KeyRule::Full128
            )
        );
    }

    #[test]
    fn names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert_eq!("VSC2.1".parse::<Variant>().unwrap(), Variant::Vsc21);
        assert!(matches!(
            "aes".parse::<Variant>(),
            Err(VscError::UnknownVariant(_))
        ));
    }
}
