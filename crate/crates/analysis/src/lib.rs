//! Experiments on the VSC keystream generators: avalanche of the IV
//! preprocessing, a reduced SP800-22 randomness battery over keystreams, and
//! keystream throughput.
//!
//! Every randomized experiment draws from [`rng::unit_rng`], one independent
//! stream per trial or sequence, so results depend only on the seed and
//! never on how work is spread across threads.

pub mod avalanche;
pub mod battery;
pub mod bench;
mod error;
pub mod hamming;
pub mod nist;
pub mod report;
pub mod rng;
pub mod seeds;

pub use avalanche::{avalanche_experiment, AvalancheMode, AvalancheResult};
pub use battery::{battery_over_keystreams, BatteryReport, SetSpec, TestSummary};
pub use bench::{bench, bench_compare, BenchResult};
pub use error::AnalysisError;
pub use hamming::hamming_distance;
pub use nist::{run_battery, BatteryParams, BitSequence, RandomnessTestResult, ALPHA};
pub use seeds::{pattern_seeds, PatternKind};

/// Default experiment seed when none is given.
pub const DEFAULT_SEED: u64 = 0x5653_4332_3031_3730;
