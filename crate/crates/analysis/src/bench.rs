use std::hint::black_box;
use std::time::{Duration, Instant};

use serde::Serialize;
use vsc_core::{init_state, InitVector, KeyMaterial, Keystream, Variant};

const CHUNK: usize = 64 * 1024;
const LATENCY_SAMPLES: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchResult {
    pub variant: Variant,
    pub bytes_processed: u64,
    pub repetitions: u32,
    /// Best (shortest) repetition, seconds.
    pub elapsed: f64,
    /// `bytes * 8 / elapsed / 10^6`.
    pub throughput_mbps: f64,
    /// Mean cost of one `init_state`, best repetition, nanoseconds.
    pub setup_latency_ns: f64,
}

fn bench_key() -> (KeyMaterial, InitVector) {
    (
        KeyMaterial::from_words([0x0123_4567, 0x89ab_cdef, 0xfedc_ba98, 0x7654_3210]),
        InitVector::from_words([0x0f1e_2d3c, 0x4b5a_6978, 0x8796_a5b4, 0xc3d2_e1f0]),
    )
}

fn time_keystream(variant: Variant, n_bytes: u64) -> Duration {
    let (key, iv) = bench_key();
    let mut ks = Keystream::new(variant.config(), &key, &iv);
    let mut buf = vec![0u8; CHUNK];
    let start = Instant::now();
    let mut left = n_bytes;
    while left > 0 {
        let take = left.min(CHUNK as u64) as usize;
        ks.fill(&mut buf[..take]);
        black_box(&buf);
        left -= take as u64;
    }
    start.elapsed()
}

fn time_setup(variant: Variant) -> Duration {
    let (key, iv) = bench_key();
    let cfg = variant.config();
    let [_, y, z, w] = iv.words();
    let start = Instant::now();
    for i in 0..LATENCY_SAMPLES {
        let iv = InitVector::from_words([i, y, z, w]);
        black_box(init_state(&cfg, black_box(&key), &iv));
    }
    start.elapsed() / LATENCY_SAMPLES
}

/// Steady-state keystream throughput of one stream, best of `repetitions`.
/// Setup (preprocessing plus key loading) is timed separately.
pub fn bench(variant: Variant, n_bytes: u64, repetitions: u32) -> BenchResult {
    bench_compare(&[variant], n_bytes, repetitions).remove(0)
}

/// Benchmarks several variants with their repetitions interleaved, so slow
/// drift in machine load hits all of them alike.
pub fn bench_compare(variants: &[Variant], n_bytes: u64, repetitions: u32) -> Vec<BenchResult> {
    let reps = repetitions.max(1);
    let mut best = vec![(Duration::MAX, Duration::MAX); variants.len()];
    for _ in 0..reps {
        for (slot, &v) in best.iter_mut().zip(variants) {
            slot.0 = slot.0.min(time_keystream(v, n_bytes));
            slot.1 = slot.1.min(time_setup(v));
        }
    }
    variants
        .iter()
        .zip(best)
        .map(|(&variant, (run, setup))| {
            let elapsed = run.as_secs_f64().max(f64::MIN_POSITIVE);
            BenchResult {
                variant,
                bytes_processed: n_bytes,
                repetitions: reps,
                elapsed,
                throughput_mbps: n_bytes as f64 * 8.0 / elapsed / 1e6,
                setup_latency_ns: setup.as_secs_f64() * 1e9,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn result_fields_are_consistent() {
        let r = bench(Variant::Vsc21, 1 << 20, 2);
        assert_eq!(r.bytes_processed, 1 << 20);
        assert_eq!(r.repetitions, 2);
        let expected = r.bytes_processed as f64 * 8.0 / r.elapsed / 1e6;
        assert!((r.throughput_mbps - expected).abs() < 1e-9 * expected);
        assert!(r.setup_latency_ns > 0.0);
    }

    #[test]
    fn compare_keeps_order() {
        let rs = bench_compare(&Variant::ALL, 1 << 16, 1);
        let vs: Vec<_> = rs.iter().map(|r| r.variant).collect();
        assert_eq!(vs, Variant::ALL);
    }
}
