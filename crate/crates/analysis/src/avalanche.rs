use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use vsc_core::{preprocess, InitVector, Variant};

use crate::rng::unit_rng;
use crate::AnalysisError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AvalancheMode {
    /// One uniformly random bit flipped per random input.
    RandomBit,
    /// Every one of the 128 input bits flipped in turn for each random input.
    EveryBit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvalancheResult {
    pub variant: Variant,
    pub mode: AvalancheMode,
    pub seed: u64,
    /// Number of measured pairs.
    pub trials: u64,
    pub mean_distance: f64,
    /// Sample variance of the per-trial distances.
    pub variance: f64,
    pub min: u32,
    pub max: u32,
    /// How often each output bit (0 = most significant bit of `X`) flipped.
    pub flip_histogram: Vec<u64>,
    /// Per-trial distances in trial order.
    #[serde(skip)]
    pub distances: Vec<u8>,
}

fn preprocessed_output(variant: Variant, iv: u128) -> u128 {
    let state = preprocess(&variant.config(), &InitVector::new(iv.to_be_bytes()))
        .expect("variant checked by caller");
    state.words[4..]
        .iter()
        .fold(0u128, |acc, &w| (acc << 32) | u128::from(w))
}

/// Flips one input bit of the preprocessing and measures how many of the 128
/// output bits (`X, Y, Z, W`) change.
///
/// `trials` counts random inputs; in [`AvalancheMode::EveryBit`] each input
/// yields 128 measurements.
pub fn avalanche_experiment(
    variant: Variant,
    trials: u64,
    seed: u64,
    mode: AvalancheMode,
) -> Result<AvalancheResult, AnalysisError> {
    if !variant.config().has_preprocessing() {
        return Err(AnalysisError::NoPreprocessing(variant));
    }
    if trials == 0 {
        return Err(AnalysisError::NoTrials);
    }
    let diffs: Vec<u128> = (0..trials)
        .into_par_iter()
        .flat_map_iter(|t| {
            let mut rng = unit_rng(seed, t);
            let input: u128 = rng.random();
            let base = preprocessed_output(variant, input);
            let flips: Vec<u32> = match mode {
                AvalancheMode::RandomBit => vec![rng.random_range(0..128)],
                AvalancheMode::EveryBit => (0..128).collect(),
            };
            flips
                .into_iter()
                .map(move |bit| base ^ preprocessed_output(variant, input ^ (1u128 << bit)))
        })
        .collect();
    Ok(summarize(variant, mode, seed, &diffs))
}

fn summarize(variant: Variant, mode: AvalancheMode, seed: u64, diffs: &[u128]) -> AvalancheResult {
    let distances: Vec<u8> = diffs.iter().map(|d| d.count_ones() as u8).collect();
    let n = distances.len() as f64;
    let mean = distances.iter().map(|&d| f64::from(d)).sum::<f64>() / n;
    let variance = if distances.len() > 1 {
        distances
            .iter()
            .map(|&d| (f64::from(d) - mean).powi(2))
            .sum::<f64>()
            / (n - 1.0)
    } else {
        0.0
    };
    let mut flip_histogram = vec![0u64; 128];
    for d in diffs {
        for (pos, slot) in flip_histogram.iter_mut().enumerate() {
            *slot += ((d >> (127 - pos)) & 1) as u64;
        }
    }
    AvalancheResult {
        variant,
        mode,
        seed,
        trials: distances.len() as u64,
        mean_distance: mean,
        variance,
        min: distances.iter().copied().min().unwrap_or(0).into(),
        max: distances.iter().copied().max().unwrap_or(0).into(),
        flip_histogram,
        distances,
    }
}
