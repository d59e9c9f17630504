use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vsc_core::round::{rotate256_left5, rotate256_right5};
use vsc_core::{
    init_state, keystream, next_block, round, CipherState, InitVector, KeyMaterial, Variant,
    VariantConfig,
};

fn random_state(rng: &mut ChaCha8Rng) -> CipherState {
    CipherState::new(rng.random())
}

#[test]
fn vsc20_round_keeps_d_even() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cfg = VariantConfig::VSC20;
    for _ in 0..100_000 {
        let mut s = random_state(&mut rng);
        s.words[3] &= !1;
        let out = round(&cfg, s).unwrap();
        assert_eq!(out.d() & 1, 0, "odd D after round from {s:?}");
    }
}

#[test]
fn rotation_inverse_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100_000 {
        let s = random_state(&mut rng);
        assert_eq!(rotate256_right5(rotate256_left5(s)), s);
    }
}

#[test]
fn rotating_256_times_is_identity() {
    let s = CipherState::new([
        0x0123_4567,
        0x89ab_cdef,
        1,
        2,
        3,
        4,
        0xffff_0000,
        0x8000_0001,
    ]);
    let mut t = s;
    for i in 1..=256 {
        t = rotate256_left5(t);
        if i < 256 {
            assert_ne!(t, s, "returned early after {i} rotations");
        }
    }
    assert_eq!(t, s);
}

#[test]
fn vsc21_round_has_no_collisions_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cfg = VariantConfig::VSC21;
    let mut seen = HashSet::with_capacity(1_000_000);
    for _ in 0..1_000_000 {
        let out = round(&cfg, random_state(&mut rng)).unwrap();
        assert!(seen.insert(out.words));
    }
}

#[test]
fn zero_state_is_fixed_under_plain_rotation() {
    for cfg in [
        VariantConfig::VSC128,
        VariantConfig::VSC21,
        VariantConfig::VSC20,
    ] {
        assert_eq!(
            round(&cfg, CipherState::zero()).unwrap(),
            CipherState::zero()
        );
    }
}

#[test]
fn keystream_is_identical_across_threads() {
    let key = KeyMaterial::new([0x42; 16]);
    let iv = InitVector::new([0x24; 16]);
    let reference: Vec<Vec<u8>> = Variant::ALL
        .iter()
        .map(|v| keystream(v.config(), &key, &iv, 4096))
        .collect();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            std::thread::spawn(move || {
                Variant::ALL
                    .iter()
                    .map(|v| keystream(v.config(), &key, &iv, 4096))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), reference);
    }
}

#[test]
fn two_blocks_chain_from_init_state() {
    let key = KeyMaterial::new([9; 16]);
    let iv = InitVector::new([8; 16]);
    for v in Variant::ALL {
        let cfg = v.config();
        let s0 = init_state(&cfg, &key, &iv);
        let (s1, b1) = next_block(&cfg, s0).unwrap();
        let (_, b2) = next_block(&cfg, s1).unwrap();
        let mut expected = b1.to_bytes().to_vec();
        expected.extend_from_slice(&b2.to_bytes());
        assert_eq!(keystream(cfg, &key, &iv, 32), expected, "{v}");
    }
}
