//! The round: mask, coupled quadratic multiplication, 256-bit rotation.

use crate::{CipherState, MaskRule, RotationRule, Variant, VariantConfig, VscError};

/// Coupling partner of each word in the multiplication layer.
///
/// Word `i` is updated as `s[i] * (2 s[i] + mask(s[PARTNER[i]]))`, giving
/// `A<-y, B<-x, C<-z, D<-w, X<-c, Y<-d, Z<-a, W<-b`.
pub const PARTNER: [usize; 8] = [5, 4, 6, 7, 2, 3, 0, 1];

#[inline(always)]
pub const fn mask_clear2_set1(w: u32) -> u32 {
    (w & !3) | 1
}

#[inline(always)]
pub const fn mask_affine_4x_plus_1(w: u32) -> u32 {
    (w << 2) | 1
}

impl MaskRule {
    #[inline(always)]
    pub fn apply(self, w: u32) -> u32 {
        match self {
            MaskRule::Clear2Set1 => mask_clear2_set1(w),
            MaskRule::Affine4xPlus1 => mask_affine_4x_plus_1(w),
        }
    }
}

#[inline(always)]
fn quad(w: u32, m: u32) -> u32 {
    w.wrapping_mul(w.wrapping_mul(2).wrapping_add(m))
}

#[inline(always)]
fn mul_layer<const AFFINE: bool>(s: &[u32; 8]) -> [u32; 8] {
    let mask = |w: u32| {
        if AFFINE {
            mask_affine_4x_plus_1(w)
        } else {
            mask_clear2_set1(w)
        }
    };
    let mut out = [0u32; 8];
    for i in 0..8 {
        out[i] = quad(s[i], mask(s[PARTNER[i]]));
    }
    out
}

#[inline(always)]
fn rot5<const TWIST: bool>(p: &[u32; 8]) -> [u32; 8] {
    let mut out = [0u32; 8];
    for i in 0..8 {
        out[i] = (p[i] << 5) | (p[(i + 1) % 8] >> 27);
    }
    if TWIST {
        out[3] = (p[3] << 5) ^ ((p[4] >> 27) << 1);
    }
    out
}

#[inline(always)]
fn round_words<const AFFINE: bool, const TWIST: bool>(s: &mut [u32; 8]) {
    *s = rot5::<TWIST>(&mul_layer::<AFFINE>(s));
}

/// Runs `count` rounds without the VSC 2.0 parity check. Callers guarantee
/// the precondition; the variant is dispatched once, outside the loop.
#[inline]
pub(crate) fn run_rounds(variant: Variant, s: &mut [u32; 8], count: usize) {
    match variant {
        Variant::Vsc128 => (0..count).for_each(|_| round_words::<false, false>(s)),
        Variant::Vsc20 => (0..count).for_each(|_| round_words::<false, true>(s)),
        Variant::Vsc21 => (0..count).for_each(|_| round_words::<true, false>(s)),
    }
}

/// Runs `count` rounds under an arbitrary configuration. Slower than the
/// specialized path; used when the rules do not match a named variant.
pub(crate) fn run_rounds_cfg(cfg: &VariantConfig, s: &mut [u32; 8], count: usize) {
    if *cfg == cfg.variant.config() {
        return run_rounds(cfg.variant, s, count);
    }
    for _ in 0..count {
        let m = multiplication_layer(CipherState::new(*s), cfg.mask_rule);
        *s = match cfg.rotation_rule {
            RotationRule::PlainRot5 => rotate256_left5(m),
            RotationRule::Rot5DTwist => rotate256_left5_d_twist(m),
        }
        .words;
    }
}

pub(crate) fn check_domain(cfg: &VariantConfig, state: &CipherState) -> Result<(), VscError> {
    if cfg.rotation_rule == RotationRule::Rot5DTwist && state.d() & 1 == 1 {
        return Err(VscError::OddD(state.d()));
    }
    Ok(())
}

/// Every word multiplied by its quadratic polynomial; partner values are read
/// from the input state before any word is written.
pub fn multiplication_layer(state: CipherState, mask_rule: MaskRule) -> CipherState {
    let words = match mask_rule {
        MaskRule::Clear2Set1 => mul_layer::<false>(&state.words),
        MaskRule::Affine4xPlus1 => mul_layer::<true>(&state.words),
    };
    CipherState::new(words)
}

/// 5-bit left rotation of the 256-bit string `A || B || ... || W`.
pub fn rotate256_left5(state: CipherState) -> CipherState {
    CipherState::new(rot5::<false>(&state.words))
}

/// [`rotate256_left5`] with the VSC 2.0 rule for `D`:
/// `D = (D' << 5) ^ ((X' >> 27) << 1)`. Bit 0 of the result's `D` is always 0.
pub fn rotate256_left5_d_twist(state: CipherState) -> CipherState {
    CipherState::new(rot5::<true>(&state.words))
}

/// Inverse of [`rotate256_left5`].
pub fn rotate256_right5(state: CipherState) -> CipherState {
    let p = state.words;
    let mut out = [0u32; 8];
    for i in 0..8 {
        out[i] = (p[i] >> 5) | (p[(i + 7) % 8] << 27);
    }
    CipherState::new(out)
}

/// One round under `cfg`.
///
/// Fails with [`VscError::OddD`] when the configuration uses the D-twist
/// rotation and the input `D` is odd: that state lies outside the set on
/// which the VSC 2.0 round is a bijection.
pub fn round(cfg: &VariantConfig, state: CipherState) -> Result<CipherState, VscError> {
    check_domain(cfg, &state)?;
    let mut words = state.words;
    run_rounds_cfg(cfg, &mut words, 1);
    Ok(CipherState::new(words))
}
