//! A reduced SP800-22 battery: frequency, block frequency, runs, longest run
//! of ones, cumulative sums, serial and approximate entropy.
//!
//! Every test returns p-values computed with the standard's formulas. Tests
//! that need more bits than the sequence holds report
//! [`Outcome::NotApplicable`] instead of a p-value.

use std::f64::consts::{LN_2, SQRT_2};

use serde::Serialize;
use statrs::function::erf::erfc;
use statrs::function::gamma::gamma_ur;

/// Significance level used for pass/fail decisions.
pub const ALPHA: f64 = 0.01;

/// Bits as `0`/`1` bytes, first bit first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence(Vec<u8>);

impl BitSequence {
    /// Unpacks bytes most significant bit first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        BitSequence(
            bytes
                .iter()
                .flat_map(|b| (0..8).rev().map(move |i| (b >> i) & 1))
                .collect(),
        )
    }

    /// Parses a string of `0` and `1`; other characters (whitespace) are skipped.
    pub fn from_ascii(s: &str) -> Self {
        BitSequence(
            s.bytes()
                .filter_map(|c| match c {
                    b'0' => Some(0),
                    b'1' => Some(1),
                    _ => None,
                })
                .collect(),
        )
    }

    pub fn from_bits(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "bits must be 0 or 1");
        BitSequence(bits)
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    fn ones(&self) -> usize {
        self.0.iter().map(|&b| b as usize).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    PValue { p: f64 },
    NotApplicable { min_bits: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomnessTestResult {
    pub test_name: &'static str,
    pub outcome: Outcome,
    /// Parameter summary, e.g. `M=128`.
    pub parameters: String,
}

impl RandomnessTestResult {
    fn new(test_name: &'static str, outcome: Outcome, parameters: String) -> Self {
        RandomnessTestResult {
            test_name,
            outcome,
            parameters,
        }
    }

    pub fn p_value(&self) -> Option<f64> {
        match self.outcome {
            Outcome::PValue { p } => Some(p),
            Outcome::NotApplicable { .. } => None,
        }
    }

    /// `Some(p >= alpha)`, or `None` when the test did not run.
    pub fn passed(&self, alpha: f64) -> Option<bool> {
        self.p_value().map(|p| p >= alpha)
    }
}

pub(crate) fn igamc(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    gamma_ur(a, x).clamp(0.0, 1.0)
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

fn na(name: &'static str, min_bits: usize, parameters: String) -> RandomnessTestResult {
    RandomnessTestResult::new(name, Outcome::NotApplicable { min_bits }, parameters)
}

fn pv(name: &'static str, p: f64, parameters: String) -> RandomnessTestResult {
    RandomnessTestResult::new(
        name,
        Outcome::PValue {
            p: p.clamp(0.0, 1.0),
        },
        parameters,
    )
}

pub fn frequency(seq: &BitSequence) -> RandomnessTestResult {
    const NAME: &str = "frequency";
    let n = seq.len();
    if n == 0 {
        return na(NAME, 1, String::new());
    }
    let s = 2.0 * seq.ones() as f64 - n as f64;
    let s_obs = s.abs() / (n as f64).sqrt();
    pv(NAME, erfc(s_obs / SQRT_2), String::new())
}

pub fn block_frequency(seq: &BitSequence, block_len: usize) -> RandomnessTestResult {
    const NAME: &str = "block_frequency";
    let params = format!("M={block_len}");
    let blocks = seq.len() / block_len.max(1);
    if block_len == 0 || blocks == 0 {
        return na(NAME, block_len.max(1), params);
    }
    let chi2: f64 = seq.0[..blocks * block_len]
        .chunks_exact(block_len)
        .map(|b| {
            let pi = b.iter().map(|&x| x as usize).sum::<usize>() as f64 / block_len as f64;
            (pi - 0.5).powi(2)
        })
        .sum::<f64>()
        * 4.0
        * block_len as f64;
    pv(NAME, igamc(blocks as f64 / 2.0, chi2 / 2.0), params)
}

pub fn runs(seq: &BitSequence) -> RandomnessTestResult {
    const NAME: &str = "runs";
    let n = seq.len();
    if n < 2 {
        return na(NAME, 2, String::new());
    }
    let nf = n as f64;
    let pi = seq.ones() as f64 / nf;
    // Frequency prerequisite: a grossly biased sequence fails outright.
    if (pi - 0.5).abs() >= 2.0 / nf.sqrt() {
        return pv(NAME, 0.0, String::new());
    }
    let v_obs = 1 + seq.0.windows(2).filter(|w| w[0] != w[1]).count();
    let num = (v_obs as f64 - 2.0 * nf * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * nf).sqrt() * pi * (1.0 - pi);
    pv(NAME, erfc(num / den), String::new())
}

struct LongestRunTable {
    block_len: usize,
    /// Lowest and highest category (runs `<= lo` and `>= hi` are pooled).
    lo: usize,
    hi: usize,
    pi: &'static [f64],
}

const LONGEST_RUN_TABLES: [LongestRunTable; 3] = [
    LongestRunTable {
        block_len: 8,
        lo: 1,
        hi: 4,
        pi: &[0.21484375, 0.3671875, 0.23046875, 0.1875],
    },
    LongestRunTable {
        block_len: 128,
        lo: 4,
        hi: 9,
        pi: &[
            0.1174035788,
            0.242955959,
            0.249363483,
            0.17517706,
            0.102701071,
            0.112398847,
        ],
    },
    LongestRunTable {
        block_len: 10_000,
        lo: 10,
        hi: 16,
        pi: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
    },
];

/// Block length is chosen from the sequence length: 8 bits below 6272 bits,
/// 128 below 750000, 10^4 above.
pub fn longest_run_of_ones(seq: &BitSequence) -> RandomnessTestResult {
    const NAME: &str = "longest_run";
    let n = seq.len();
    let table = match n {
        0..128 => return na(NAME, 128, String::new()),
        128..6272 => &LONGEST_RUN_TABLES[0],
        6272..750_000 => &LONGEST_RUN_TABLES[1],
        _ => &LONGEST_RUN_TABLES[2],
    };
    let m = table.block_len;
    let blocks = n / m;
    let mut counts = vec![0usize; table.pi.len()];
    for block in seq.0[..blocks * m].chunks_exact(m) {
        let (mut best, mut cur) = (0usize, 0usize);
        for &b in block {
            cur = if b == 1 { cur + 1 } else { 0 };
            best = best.max(cur);
        }
        counts[best.clamp(table.lo, table.hi) - table.lo] += 1;
    }
    let nb = blocks as f64;
    let chi2: f64 = counts
        .iter()
        .zip(table.pi)
        .map(|(&v, &p)| (v as f64 - nb * p).powi(2) / (nb * p))
        .sum();
    let k = (table.pi.len() - 1) as f64;
    pv(NAME, igamc(k / 2.0, chi2 / 2.0), format!("M={m}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CusumMode {
    Forward,
    Reverse,
}

pub fn cumulative_sums(seq: &BitSequence, mode: CusumMode) -> RandomnessTestResult {
    let name = match mode {
        CusumMode::Forward => "cumulative_sums_forward",
        CusumMode::Reverse => "cumulative_sums_reverse",
    };
    let n = seq.len();
    if n == 0 {
        return na(name, 1, String::new());
    }
    let step = |b: &u8| if *b == 1 { 1i64 } else { -1 };
    let z = match mode {
        CusumMode::Forward => max_abs_partial_sum(seq.0.iter().map(step)),
        CusumMode::Reverse => max_abs_partial_sum(seq.0.iter().rev().map(step)),
    };
    let (ni, zi) = (n as i64, z as i64);
    let (nf, zf) = (n as f64, z as f64);
    let sq = nf.sqrt();
    let mut sum1 = 0.0;
    for k in ((-ni / zi + 1) / 4)..=((ni / zi - 1) / 4) {
        let k = k as f64;
        sum1 += normal_cdf((4.0 * k + 1.0) * zf / sq) - normal_cdf((4.0 * k - 1.0) * zf / sq);
    }
    let mut sum2 = 0.0;
    for k in ((-ni / zi - 3) / 4)..=((ni / zi - 1) / 4) {
        let k = k as f64;
        sum2 += normal_cdf((4.0 * k + 3.0) * zf / sq) - normal_cdf((4.0 * k + 1.0) * zf / sq);
    }
    pv(name, 1.0 - sum1 + sum2, String::new())
}

fn max_abs_partial_sum(steps: impl Iterator<Item = i64>) -> u64 {
    steps
        .scan(0i64, |s, x| {
            *s += x;
            Some(s.unsigned_abs())
        })
        .max()
        .unwrap_or(0)
}

/// Frequencies of every overlapping `m`-bit pattern, the sequence extended
/// cyclically by its first `m - 1` bits.
fn pattern_counts(bits: &[u8], m: usize) -> Vec<u64> {
    let mut counts = vec![0u64; 1 << m];
    if m == 0 {
        counts[0] = bits.len() as u64;
        return counts;
    }
    let mask = (1usize << m) - 1;
    let mut w = 0usize;
    for &b in &bits[..m - 1] {
        w = (w << 1) | b as usize;
    }
    for &b in bits[m - 1..].iter().chain(&bits[..m - 1]) {
        w = ((w << 1) | b as usize) & mask;
        counts[w] += 1;
    }
    counts
}

fn psi_sq(bits: &[u8], m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len() as f64;
    let sum: f64 = pattern_counts(bits, m)
        .iter()
        .map(|&c| (c as f64).powi(2))
        .sum();
    sum * (1u64 << m) as f64 / n - n
}

/// Returns the two serial p-values (first and second differences).
pub fn serial(seq: &BitSequence, m: usize) -> [RandomnessTestResult; 2] {
    const NAMES: [&str; 2] = ["serial_1", "serial_2"];
    let params = format!("m={m}");
    let min_bits = 1usize << m.min(40);
    if m < 2 || seq.len() < min_bits {
        return NAMES.map(|n| na(n, min_bits.max(4), params.clone()));
    }
    let bits = &seq.0;
    let (p0, p1, p2) = (psi_sq(bits, m), psi_sq(bits, m - 1), psi_sq(bits, m - 2));
    let del1 = p0 - p1;
    let del2 = p0 - 2.0 * p1 + p2;
    [
        pv(
            NAMES[0],
            igamc(2f64.powi(m as i32 - 2), del1 / 2.0),
            params.clone(),
        ),
        pv(NAMES[1], igamc(2f64.powi(m as i32 - 3), del2 / 2.0), params),
    ]
}

pub fn approximate_entropy(seq: &BitSequence, m: usize) -> RandomnessTestResult {
    const NAME: &str = "approximate_entropy";
    let params = format!("m={m}");
    let min_bits = 1usize << m.min(40);
    if m == 0 || seq.len() < min_bits {
        return na(NAME, min_bits.max(2), params);
    }
    let n = seq.len() as f64;
    let phi = |m: usize| -> f64 {
        pattern_counts(&seq.0, m)
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                p * p.ln()
            })
            .sum()
    };
    let ap_en = phi(m) - phi(m + 1);
    let chi2 = 2.0 * n * (LN_2 - ap_en);
    pv(NAME, igamc(2f64.powi(m as i32 - 1), chi2 / 2.0), params)
}

/// Parameters of the reduced battery.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BatteryParams {
    pub block_frequency_len: usize,
    pub serial_m: usize,
    pub approximate_entropy_m: usize,
}

impl Default for BatteryParams {
    /// The reference tool's defaults for 10^6-bit sequences.
    fn default() -> Self {
        BatteryParams {
            block_frequency_len: 128,
            serial_m: 16,
            approximate_entropy_m: 10,
        }
    }
}

impl BatteryParams {
    /// Defaults, reduced for sequences shorter than 10^6 bits so that
    /// `m < log2(n) - 2` (serial) and `m < log2(n) - 5` (approximate entropy).
    pub fn for_length(n: usize) -> Self {
        let d = Self::default();
        let log2 = (usize::BITS - n.max(1).leading_zeros() - 1) as usize;
        BatteryParams {
            block_frequency_len: d.block_frequency_len,
            serial_m: d.serial_m.min(log2.saturating_sub(3)).max(2),
            approximate_entropy_m: d.approximate_entropy_m.min(log2.saturating_sub(6)).max(1),
        }
    }
}

/// Names of the result entries, in the order [`run_battery`] emits them.
pub const RESULT_NAMES: [&str; 9] = [
    "frequency",
    "block_frequency",
    "runs",
    "longest_run",
    "cumulative_sums_forward",
    "cumulative_sums_reverse",
    "serial_1",
    "serial_2",
    "approximate_entropy",
];

/// Runs all seven tests. Cumulative sums and serial contribute two entries
/// each, so nine results come back, named as in [`RESULT_NAMES`].
pub fn run_battery(seq: &BitSequence, params: &BatteryParams) -> Vec<RandomnessTestResult> {
    let [s1, s2] = serial(seq, params.serial_m);
    vec![
        frequency(seq),
        block_frequency(seq, params.block_frequency_len),
        runs(seq),
        longest_run_of_ones(seq),
        cumulative_sums(seq, CusumMode::Forward),
        cumulative_sums(seq, CusumMode::Reverse),
        s1,
        s2,
        approximate_entropy(seq, params.approximate_entropy_m),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    // Worked examples published with the test descriptions; values are given
    // to six decimals there.
    const EPS100: &str = "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000";

    fn p(r: &RandomnessTestResult) -> f64 {
        r.p_value().expect("test applicable")
    }

    fn close(actual: f64, expected: f64) {
        assert!(
            (actual - expected).abs() < 1e-6,
            "got {actual}, expected {expected}"
        );
    }

    #[test]
    fn frequency_examples() {
        close(
            p(&frequency(&BitSequence::from_ascii("1011010101"))),
            0.527089,
        );
        close(p(&frequency(&BitSequence::from_ascii(EPS100))), 0.109599);
    }

    #[test]
    fn block_frequency_examples() {
        close(
            p(&block_frequency(&BitSequence::from_ascii("0110011010"), 3)),
            0.801252,
        );
        close(
            p(&block_frequency(&BitSequence::from_ascii(EPS100), 10)),
            0.706438,
        );
    }

    #[test]
    fn runs_examples() {
        close(p(&runs(&BitSequence::from_ascii("1001101011"))), 0.147232);
        close(p(&runs(&BitSequence::from_ascii(EPS100))), 0.500798);
    }

    #[test]
    fn longest_run_example() {
        let eps = "11001100000101010110110001001100111000000000001001\
                   00110101010001000100111101011010000000110101111100\
                   1100111001101101100010110010";
        let seq = BitSequence::from_ascii(eps);
        assert_eq!(seq.len(), 128);
        // 0.180609 with exact category probabilities; rounding them to four
        // decimals gives 0.180598.
        close(p(&longest_run_of_ones(&seq)), 0.180609);
    }

    #[test]
    fn cusum_examples() {
        close(
            p(&cumulative_sums(
                &BitSequence::from_ascii("1011010111"),
                CusumMode::Forward,
            )),
            0.4116588,
        );
        let seq = BitSequence::from_ascii(EPS100);
        close(p(&cumulative_sums(&seq, CusumMode::Forward)), 0.219194);
        close(p(&cumulative_sums(&seq, CusumMode::Reverse)), 0.114866);
    }

    #[test]
    fn serial_example() {
        let [p1, p2] = serial(&BitSequence::from_ascii("0011011101"), 3);
        close(p(&p1), 0.808792);
        close(p(&p2), 0.670320);
    }

    #[test]
    fn approximate_entropy_examples() {
        close(
            p(&approximate_entropy(
                &BitSequence::from_ascii("0100110101"),
                3,
            )),
            0.261961,
        );
        close(
            p(&approximate_entropy(&BitSequence::from_ascii(EPS100), 2)),
            0.235301,
        );
    }

    #[test]
    fn degenerate_sequences() {
        let zeros = BitSequence::from_bits(vec![0; 1_000_000]);
        let r = frequency(&zeros);
        assert!(p(&r) < 1e-100);
        assert_eq!(r.passed(ALPHA), Some(false));

        let alt = BitSequence::from_bits((0..1_000_000).map(|i| (i % 2) as u8).collect());
        assert_eq!(p(&frequency(&alt)), 1.0);
        let r = runs(&alt);
        assert!(p(&r) < 1e-100);
        assert_eq!(r.passed(ALPHA), Some(false));
    }

    #[test]
    fn short_sequences_are_not_applicable() {
        let seq = BitSequence::from_ascii("0101");
        assert_eq!(
            longest_run_of_ones(&seq).outcome,
            Outcome::NotApplicable { min_bits: 128 }
        );
        assert!(serial(&seq, 16).iter().all(|r| r.p_value().is_none()));
        assert!(approximate_entropy(&seq, 10).p_value().is_none());
        assert!(block_frequency(&seq, 128).passed(ALPHA).is_none());
        assert!(frequency(&BitSequence::from_bits(vec![]))
            .p_value()
            .is_none());
    }

    #[test]
    fn battery_names_line_up() {
        let seq = BitSequence::from_bytes(&[0x5a; 4096]);
        let names: Vec<_> = run_battery(&seq, &BatteryParams::for_length(seq.len()))
            .iter()
            .map(|r| r.test_name)
            .collect();
        assert_eq!(names, RESULT_NAMES);
    }

    #[test]
    fn params_scale_down() {
        assert_eq!(
            BatteryParams::for_length(1_000_000),
            BatteryParams::default()
        );
        let p = BatteryParams::for_length(100_000);
        assert_eq!((p.serial_m, p.approximate_entropy_m), (13, 10));
    }

    #[test]
    fn bytes_unpack_msb_first() {
        assert_eq!(
            BitSequence::from_bytes(&[0x80, 0x01]).bits(),
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]
        );
    }
}
