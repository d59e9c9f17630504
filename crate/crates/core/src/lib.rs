//! Vector Stream Cipher keystream generators.
//!
//! Three variants share one round structure built from the quadratic
//! permutation polynomial `x(2x + m) mod 2^32`:
//!
//! * [`Variant::Vsc128`]: the original cipher, 8 rounds per 128-bit block, no
//!   IV preprocessing.
//! * [`Variant::Vsc20`]: 30-round IV preprocessing, 9 rounds per block, and a
//!   twisted rotation that keeps the `D` word even so the round is a bijection.
//!   The effective key is 127 bits.
//! * [`Variant::Vsc21`]: 30-round IV preprocessing, 9 rounds per block, masks
//!   of the form `4x + 1` and a plain 256-bit rotation. Full 128-bit key.
//!
//! Keys and IVs are 16 bytes. Bytes `0..4` become the first word (`A` or `X`),
//! bytes `12..16` the last (`D` or `W`), each read big-endian. Keystream blocks
//! serialize `X || Y || Z || W`, big-endian per word.
//!
//! ```
//! use vsc_core::{xor_crypt, InitVector, KeyMaterial, Variant};
//!
//! let key = KeyMaterial::from_hex("000102030405060708090a0b0c0d0e0f").unwrap();
//! let iv = InitVector::from_hex("101112131415161718191a1b1c1d1e1f").unwrap();
//! let ct = xor_crypt(Variant::Vsc21.config(), &key, &iv, b"attack at dawn");
//! let pt = xor_crypt(Variant::Vsc21.config(), &key, &iv, &ct);
//! assert_eq!(pt, b"attack at dawn");
//! ```

mod cipher;
mod error;
pub mod kat;
pub mod round;
mod state;
mod variant;

pub use cipher::{init_state, keystream, load_key, next_block, preprocess, xor_crypt, Keystream};
pub use error::VscError;
pub use round::round;
pub use state::{CipherState, InitVector, KeyMaterial, KeystreamBlock, PREPROCESS_CONSTANTS};
pub use variant::{KeyRule, MaskRule, RotationRule, Variant, VariantConfig};
