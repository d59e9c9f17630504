use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use vsc_core::{keystream, InitVector, KeyMaterial, Variant};

use crate::nist::{
    igamc, run_battery, BatteryParams, BitSequence, RandomnessTestResult, ALPHA, RESULT_NAMES,
};
use crate::rng::unit_rng;
use crate::seeds::{pattern_seeds, PatternKind};

/// Where the `(key, iv)` of each sequence comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SetSpec {
    /// Uniformly random keys and IVs from the seeded generator.
    Random,
    /// Low-weight conditions from [`pattern_seeds`], in order.
    Pattern(PatternKind),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceRecord {
    pub index: usize,
    pub key: String,
    pub iv: String,
    pub results: Vec<RandomnessTestResult>,
}

/// Pass proportion of one battery entry across all sequences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestSummary {
    pub test_name: &'static str,
    /// Sequences for which the test produced a p-value.
    pub applicable: usize,
    pub passed: usize,
    pub proportion: f64,
    /// `(1 - alpha) -/+ 3 sqrt(alpha (1 - alpha) / applicable)`.
    pub interval: (f64, f64),
    pub within_interval: bool,
    /// Chi-square uniformity of the p-values over ten bins (needs at least
    /// ten p-values).
    pub uniformity_p: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub variant: Variant,
    pub set: SetSpec,
    pub seed: u64,
    pub sequences: usize,
    pub bits_per_sequence: usize,
    pub alpha: f64,
    pub params: BatteryParams,
    pub tests: Vec<TestSummary>,
    #[serde(skip)]
    pub per_sequence: Vec<SequenceRecord>,
}

impl BatteryReport {
    pub fn all_within(&self) -> bool {
        self.tests.iter().all(|t| t.within_interval)
    }

    pub fn test(&self, name: &str) -> Option<&TestSummary> {
        self.tests.iter().find(|t| t.test_name == name)
    }
}

pub fn proportion_interval(alpha: f64, sequences: usize) -> (f64, f64) {
    let p = 1.0 - alpha;
    let half = 3.0 * (p * alpha / sequences as f64).sqrt();
    (p - half, p + half)
}

fn uniformity(p_values: &[f64]) -> Option<f64> {
    if p_values.len() < 10 {
        return None;
    }
    let mut bins = [0usize; 10];
    for &p in p_values {
        bins[((p * 10.0) as usize).min(9)] += 1;
    }
    let expected = p_values.len() as f64 / 10.0;
    let chi2: f64 = bins
        .iter()
        .map(|&b| (b as f64 - expected).powi(2) / expected)
        .sum();
    Some(igamc(4.5, chi2 / 2.0))
}

fn conditions(
    variant: Variant,
    set: SetSpec,
    n: usize,
    seed: u64,
) -> Vec<(KeyMaterial, InitVector)> {
    match set {
        SetSpec::Random => (0..n as u64)
            .map(|i| {
                let mut rng = unit_rng(seed, i);
                (
                    KeyMaterial::new(rng.random()),
                    InitVector::new(rng.random()),
                )
            })
            .collect(),
        SetSpec::Pattern(kind) => pattern_seeds(kind, variant).into_iter().take(n).collect(),
    }
}

/// Runs the battery on `n_sequences` keystreams of `bits_per_sequence` bits,
/// with parameters from [`BatteryParams::for_length`].
///
/// Pattern sets hold at most 256 conditions; `n_sequences` caps how many are used.
pub fn battery_over_keystreams(
    variant: Variant,
    set: SetSpec,
    n_sequences: usize,
    bits_per_sequence: usize,
    seed: u64,
) -> BatteryReport {
    battery_with_params(
        variant,
        set,
        n_sequences,
        bits_per_sequence,
        seed,
        BatteryParams::for_length(bits_per_sequence),
    )
}

pub fn battery_with_params(
    variant: Variant,
    set: SetSpec,
    n_sequences: usize,
    bits_per_sequence: usize,
    seed: u64,
    params: BatteryParams,
) -> BatteryReport {
    let cfg = variant.config();
    let per_sequence: Vec<SequenceRecord> = conditions(variant, set, n_sequences, seed)
        .into_par_iter()
        .enumerate()
        .map(|(index, (key, iv))| {
            let bytes = keystream(cfg, &key, &iv, bits_per_sequence.div_ceil(8));
            let mut seq = BitSequence::from_bytes(&bytes);
            seq.truncate(bits_per_sequence);
            SequenceRecord {
                index,
                key: key.to_hex(),
                iv: iv.to_hex(),
                results: run_battery(&seq, &params),
            }
        })
        .collect();

    let tests = if per_sequence.is_empty() {
        Vec::new()
    } else {
        RESULT_NAMES
            .iter()
            .enumerate()
            .map(|(i, &name)| summarize(name, i, &per_sequence))
            .collect()
    };
    BatteryReport {
        variant,
        set,
        seed,
        sequences: per_sequence.len(),
        bits_per_sequence,
        alpha: ALPHA,
        params,
        tests,
        per_sequence,
    }
}

fn summarize(name: &'static str, slot: usize, records: &[SequenceRecord]) -> TestSummary {
    let p_values: Vec<f64> = records
        .iter()
        .filter_map(|r| r.results[slot].p_value())
        .collect();
    let applicable = p_values.len();
    let passed = p_values.iter().filter(|&&p| p >= ALPHA).count();
    if applicable == 0 {
        return TestSummary {
            test_name: name,
            applicable,
            passed,
            proportion: 0.0,
            interval: (0.0, 0.0),
            within_interval: false,
            uniformity_p: None,
        };
    }
    let proportion = passed as f64 / applicable as f64;
    let interval = proportion_interval(ALPHA, applicable);
    TestSummary {
        test_name: name,
        applicable,
        passed,
        proportion,
        interval,
        within_interval: proportion >= interval.0 && proportion <= interval.1,
        uniformity_p: uniformity(&p_values),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_for_100_sequences() {
        let (lo, hi) = proportion_interval(0.01, 100);
        assert!((lo - 0.960150).abs() < 1e-6, "{lo}");
        assert!((hi - 1.019850).abs() < 1e-6, "{hi}");
        // 97 of 100 is the smallest passing count.
        assert!(0.97 >= lo && 0.96 < lo);
    }

    #[test]
    fn empty_report() {
        let r = battery_over_keystreams(Variant::Vsc21, SetSpec::Random, 0, 10_000, 1);
        assert_eq!(r.sequences, 0);
        assert!(r.tests.is_empty());
        assert!(r.per_sequence.is_empty());
    }

    #[test]
    fn small_run_is_deterministic() {
        let a = battery_over_keystreams(Variant::Vsc20, SetSpec::Random, 12, 20_000, 5);
        let b = battery_over_keystreams(Variant::Vsc20, SetSpec::Random, 12, 20_000, 5);
        assert_eq!(a, b);
        assert_eq!(a.tests.len(), RESULT_NAMES.len());
        assert!(a.tests.iter().all(|t| t.applicable == 12));
    }

    #[test]
    fn pattern_sets_are_capped() {
        let r = battery_over_keystreams(
            Variant::Vsc20,
            SetSpec::Pattern(PatternKind::SingleOne),
            1000,
            1024,
            0,
        );
        assert_eq!(r.sequences, 255);
        assert_eq!(r.per_sequence[0].key, "80000000000000000000000000000000");
    }

    #[test]
    fn uniformity_needs_ten_values() {
        assert_eq!(uniformity(&[0.5; 9]), None);
        let even: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        assert!((uniformity(&even).unwrap() - 1.0).abs() < 1e-12);
    }
}
