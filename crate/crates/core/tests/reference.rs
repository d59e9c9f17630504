//! Cross-checks against a second straight-line transcription of the round,
//! written word by word without the partner table or rotation loop.

use proptest::prelude::*;
use vsc_core::{init_state, keystream, round, CipherState, InitVector, KeyMaterial, VariantConfig};

const M: u64 = 0xffff_ffff;

#[derive(Clone, Copy, PartialEq, Debug)]
enum Kind {
    V128,
    V20,
    V21,
}

fn reference_round(s: [u32; 8], kind: Kind) -> [u32; 8] {
    let [a0, b0, c0, d0, x0, y0, z0, w0] = s.map(u64::from);
    let mask = |v: u64| {
        if kind == Kind::V21 {
            (4 * v + 1) & M
        } else {
            (v - (v % 4) + 1) & M
        }
    };
    let (a, b, c, d) = (mask(a0), mask(b0), mask(c0), mask(d0));
    let (x, y, z, w) = (mask(x0), mask(y0), mask(z0), mask(w0));
    let a1 = (a0 * ((2 * a0 + y) & M)) & M;
    let b1 = (b0 * ((2 * b0 + x) & M)) & M;
    let c1 = (c0 * ((2 * c0 + z) & M)) & M;
    let d1 = (d0 * ((2 * d0 + w) & M)) & M;
    let x1 = (x0 * ((2 * x0 + c) & M)) & M;
    let y1 = (y0 * ((2 * y0 + d) & M)) & M;
    let z1 = (z0 * ((2 * z0 + a) & M)) & M;
    let w1 = (w0 * ((2 * w0 + b) & M)) & M;
    let na = ((a1 << 5) & M) ^ (b1 >> 27);
    let nb = ((b1 << 5) & M) ^ (c1 >> 27);
    let nc = ((c1 << 5) & M) ^ (d1 >> 27);
    let nd = if kind == Kind::V20 {
        ((d1 << 5) & M) ^ ((x1 >> 27) << 1)
    } else {
        ((d1 << 5) & M) ^ (x1 >> 27)
    };
    let nx = ((x1 << 5) & M) ^ (y1 >> 27);
    let ny = ((y1 << 5) & M) ^ (z1 >> 27);
    let nz = ((z1 << 5) & M) ^ (w1 >> 27);
    let nw = ((w1 << 5) & M) ^ (a1 >> 27);
    [na, nb, nc, nd, nx, ny, nz, nw].map(|v| v as u32)
}

fn reference_keystream(kind: Kind, key: [u8; 16], iv: [u8; 16], blocks: usize) -> Vec<u8> {
    let be = |b: &[u8]| u32::from_be_bytes([b[0], b[1], b[2], b[3]]);
    let k = [be(&key[0..]), be(&key[4..]), be(&key[8..]), be(&key[12..])];
    let v = [be(&iv[0..]), be(&iv[4..]), be(&iv[8..]), be(&iv[12..])];
    let mut s;
    let per_block;
    if kind == Kind::V128 {
        s = [k[0], k[1], k[2], k[3], v[0], v[1], v[2], v[3]];
        per_block = 8;
    } else {
        s = [
            0xfedcba98, 0x01234567, 0x89abcdef, 0x76543210, v[0], v[1], v[2], v[3],
        ];
        for _ in 0..30 {
            s = reference_round(s, kind);
        }
        s[0] = k[0];
        s[1] = k[1];
        s[2] = k[2];
        s[3] = if kind == Kind::V20 {
            k[3] & 0xffff_fffe
        } else {
            k[3]
        };
        per_block = 9;
    }
    let mut out = Vec::new();
    for _ in 0..blocks {
        for _ in 0..per_block {
            s = reference_round(s, kind);
        }
        for w in &s[4..] {
            out.extend_from_slice(&w.to_be_bytes());
        }
    }
    out
}

fn cfg(kind: Kind) -> VariantConfig {
    match kind {
        Kind::V128 => VariantConfig::VSC128,
        Kind::V20 => VariantConfig::VSC20,
        Kind::V21 => VariantConfig::VSC21,
    }
}

fn kinds() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::V128), Just(Kind::V20), Just(Kind::V21)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn round_matches_reference(words: [u32; 8], kind in kinds()) {
        let mut words = words;
        if kind == Kind::V20 {
            words[3] &= !1;
        }
        let got = round(&cfg(kind), CipherState::new(words)).unwrap();
        prop_assert_eq!(got.words, reference_round(words, kind));
    }

    #[test]
    fn keystream_matches_reference(key: [u8; 16], iv: [u8; 16], kind in kinds(), blocks in 0usize..5) {
        let got = keystream(cfg(kind), &KeyMaterial::new(key), &InitVector::new(iv), blocks * 16);
        prop_assert_eq!(got, reference_keystream(kind, key, iv, blocks));
    }
}

#[test]
fn init_state_of_vsc20_masks_key() {
    let key = KeyMaterial::new([0xff; 16]);
    let iv = InitVector::new([0; 16]);
    let s = init_state(&VariantConfig::VSC20, &key, &iv);
    assert_eq!(&s.words[..4], &[u32::MAX, u32::MAX, u32::MAX, 0xffff_fffe]);
}
