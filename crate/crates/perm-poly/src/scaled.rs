//! A down-scaled VSC 2.1 round on eight `n`-bit words (`n <= 3`), small
//! enough to enumerate every state.
//!
//! Same partner table and `4x + 1` mask as the full cipher, reduced mod
//! `2^n`, followed by a 5-bit left rotation of the `8n`-bit concatenation.

use crate::exhaustive::{build_report, sweep, Codec};
use crate::{BijectivityReport, PolyError};

/// Word `i` couples to word `PARTNER[i]` (`A<-Y, B<-X, C<-Z, D<-W, X<-C, Y<-D, Z<-A, W<-B`).
pub const PARTNER: [usize; 8] = [5, 4, 6, 7, 2, 3, 0, 1];

const ROTATION: u32 = 5;

fn check_width(n: u32) -> Result<(), PolyError> {
    if (1..=3).contains(&n) {
        Ok(())
    } else {
        Err(PolyError::ScaledWidth(n))
    }
}

#[inline]
fn round_packed(n: u32, x: u64) -> u64 {
    let codec = Codec::new(n, 8);
    let mask = (1u64 << n) - 1;
    let mut s = [0u64; 8];
    codec.decode(x, &mut s);
    let mut p = [0u64; 8];
    for i in 0..8 {
        let c = (s[PARTNER[i]] << 2) | 1;
        p[i] = s[i].wrapping_mul(2 * s[i] + c) & mask;
    }
    let bits = 8 * n;
    let r = ROTATION % bits;
    let packed = codec.encode(&p);
    ((packed << r) | (packed >> (bits - r))) & ((1u64 << bits) - 1)
}

/// One scaled round. Words are `A, B, C, D, X, Y, Z, W`, each below `2^n`.
pub fn scaled_round(n: u32, state: [u64; 8]) -> Result<[u64; 8], PolyError> {
    check_width(n)?;
    if let Some((index, &value)) = state.iter().enumerate().find(|(_, &w)| w >> n != 0) {
        return Err(PolyError::ElementOutOfRange { index, value, n });
    }
    let codec = Codec::new(n, 8);
    let mut out = [0u64; 8];
    codec.decode(round_packed(n, codec.encode(&state)), &mut out);
    Ok(out)
}

/// Enumerates all `2^(8n)` states and checks that the scaled round permutes them.
pub fn scaled_round_check(n: u32) -> Result<BijectivityReport, PolyError> {
    check_width(n)?;
    let bits = 8 * n;
    let codec = Codec::new(n, 8);
    let violation = sweep(bits, |_| true, |x| round_packed(n, x));
    Ok(build_report(
        format!("scaled-vsc21 n={n}"),
        1u64 << bits,
        false,
        violation,
        |x| codec.vector(x),
    ))
}
