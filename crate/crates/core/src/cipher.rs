use crate::round::{check_domain, run_rounds_cfg};
use crate::{
    CipherState, InitVector, KeyMaterial, KeyRule, KeystreamBlock, VariantConfig, VscError,
    PREPROCESS_CONSTANTS,
};

/// Runs the IV preprocessing: `A..D` hold the fixed constants (not the key),
/// `X..W` the IV, then `cfg.preprocessing_rounds` rounds.
pub fn preprocess(cfg: &VariantConfig, iv: &InitVector) -> Result<CipherState, VscError> {
    if !cfg.has_preprocessing() {
        return Err(VscError::NoPreprocessing(cfg.variant));
    }
    let mut words = [0u32; 8];
    words[..4].copy_from_slice(&PREPROCESS_CONSTANTS);
    words[4..].copy_from_slice(&iv.words());
    run_rounds_cfg(cfg, &mut words, cfg.preprocessing_rounds);
    Ok(CipherState::new(words))
}

/// Overwrites `A..D` with the key words. Under [`KeyRule::DLsbZero`] bit 0 of
/// `D` is cleared whatever the key says.
pub fn load_key(cfg: &VariantConfig, state: CipherState, key: &KeyMaterial) -> CipherState {
    let mut words = state.words;
    words[..4].copy_from_slice(&key.words());
    if cfg.key_rule == KeyRule::DLsbZero {
        words[CipherState::D] &= !1;
    }
    CipherState::new(words)
}

pub fn init_state(cfg: &VariantConfig, key: &KeyMaterial, iv: &InitVector) -> CipherState {
    let base = if cfg.has_preprocessing() {
        preprocess(cfg, iv).expect("variant has a preprocessing stage")
    } else {
        let mut words = [0u32; 8];
        words[4..].copy_from_slice(&iv.words());
        CipherState::new(words)
    };
    load_key(cfg, base, key)
}

/// Advances the state by one block's worth of rounds and emits `(X, Y, Z, W)`.
pub fn next_block(
    cfg: &VariantConfig,
    state: CipherState,
) -> Result<(CipherState, KeystreamBlock), VscError> {
    check_domain(cfg, &state)?;
    let mut words = state.words;
    run_rounds_cfg(cfg, &mut words, cfg.block_rounds);
    let next = CipherState::new(words);
    Ok((next, next.output_block()))
}

/// The first `n_bytes` bytes of keystream for `(key, iv)`.
pub fn keystream(
    cfg: VariantConfig,
    key: &KeyMaterial,
    iv: &InitVector,
    n_bytes: usize,
) -> Vec<u8> {
    let mut out = vec![0u8; n_bytes];
    Keystream::new(cfg, key, iv).fill(&mut out);
    out
}

/// XOR `data` with the keystream. Encryption and decryption are the same call.
pub fn xor_crypt(cfg: VariantConfig, key: &KeyMaterial, iv: &InitVector, data: &[u8]) -> Vec<u8> {
    let mut out = data.to_vec();
    Keystream::new(cfg, key, iv).apply(&mut out);
    out
}

/// Incremental keystream generator.
///
/// Blocks are produced by chaining state; a trailing partial block is kept so
/// that successive calls to [`Keystream::fill`] or [`Keystream::apply`]
/// continue exactly where the previous call stopped.
#[derive(Clone, Debug)]
pub struct Keystream {
    cfg: VariantConfig,
    state: CipherState,
    pending: [u8; 16],
    pending_pos: usize,
    blocks: u64,
}

impl Keystream {
    pub fn new(cfg: VariantConfig, key: &KeyMaterial, iv: &InitVector) -> Self {
        Self::with_state(cfg, init_state(&cfg, key, iv))
            .expect("init_state always produces a state in the round's domain")
    }

    /// Starts from an explicit state, e.g. one taken from a vector file.
    pub fn from_state(cfg: VariantConfig, state: CipherState) -> Result<Self, VscError> {
        check_domain(&cfg, &state)?;
        Self::with_state(cfg, state)
    }

    fn with_state(cfg: VariantConfig, state: CipherState) -> Result<Self, VscError> {
        Ok(Keystream {
            cfg,
            state,
            pending: [0; 16],
            pending_pos: 16,
            blocks: 0,
        })
    }

    pub fn config(&self) -> &VariantConfig {
        &self.cfg
    }

    pub fn state(&self) -> &CipherState {
        &self.state
    }

    /// Number of blocks generated so far.
    pub fn blocks_generated(&self) -> u64 {
        self.blocks
    }

    /// Generates the next whole block. Any buffered partial block is dropped.
    pub fn next_block(&mut self) -> KeystreamBlock {
        self.pending_pos = 16;
        self.advance()
    }

    #[inline]
    fn advance(&mut self) -> KeystreamBlock {
        run_rounds_cfg(&self.cfg, &mut self.state.words, self.cfg.block_rounds);
        self.blocks += 1;
        self.state.output_block()
    }

    #[inline]
    fn write_block(&mut self, out: &mut [u8]) {
        let block = self.advance();
        for (chunk, w) in out.chunks_exact_mut(4).zip(block.words) {
            chunk.copy_from_slice(&w.to_be_bytes());
        }
    }

    pub fn fill(&mut self, out: &mut [u8]) {
        let mut rest = out;
        if self.pending_pos < 16 {
            let n = rest.len().min(16 - self.pending_pos);
            rest[..n].copy_from_slice(&self.pending[self.pending_pos..self.pending_pos + n]);
            self.pending_pos += n;
            rest = &mut rest[n..];
        }
        let mut chunks = rest.chunks_exact_mut(16);
        for chunk in &mut chunks {
            self.write_block(chunk);
        }
        let tail = chunks.into_remainder();
        if !tail.is_empty() {
            let mut buf = [0u8; 16];
            self.write_block(&mut buf);
            self.pending = buf;
            tail.copy_from_slice(&buf[..tail.len()]);
            self.pending_pos = tail.len();
        }
    }

    /// XORs keystream into `data` in place.
    pub fn apply(&mut self, data: &mut [u8]) {
        let mut ks = [0u8; 256];
        for chunk in data.chunks_mut(ks.len()) {
            let ks = &mut ks[..chunk.len()];
            self.fill(ks);
            chunk.iter_mut().zip(ks.iter()).for_each(|(d, k)| *d ^= k);
        }
    }
}
