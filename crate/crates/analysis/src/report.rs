//! Plain-text tables, JSON and CSV renderings of experiment results.

use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::{AnalysisError, AvalancheResult, BatteryReport, BenchResult};

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn algorithm_name(v: vsc_core::Variant) -> &'static str {
    match v {
        vsc_core::Variant::Vsc128 => "VSC128",
        vsc_core::Variant::Vsc20 => "VSC 2.0",
        vsc_core::Variant::Vsc21 => "VSC 2.1",
    }
}

pub fn bench_table(results: &[BenchResult]) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:<10} {:>14} {:>12} {:>16}",
        "Algorithm", "Speed(Mbps)", "Seconds", "Setup(ns)"
    )
    .unwrap();
    for r in results {
        writeln!(
            s,
            "{:<10} {:>14.6} {:>12.6} {:>16.1}",
            algorithm_name(r.variant),
            r.throughput_mbps,
            r.elapsed,
            r.setup_latency_ns
        )
        .unwrap();
    }
    s
}

pub fn avalanche_table(results: &[AvalancheResult]) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:<10} {:>10} {:>26} {:>10} {:>5} {:>5}",
        "Algorithm", "Trials", "Average Hamming distance", "Variance", "Min", "Max"
    )
    .unwrap();
    for r in results {
        writeln!(
            s,
            "{:<10} {:>10} {:>26.6} {:>10.4} {:>5} {:>5}",
            algorithm_name(r.variant),
            r.trials,
            r.mean_distance,
            r.variance,
            r.min,
            r.max
        )
        .unwrap();
    }
    s
}

pub fn battery_table(report: &BatteryReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{} set={:?} sequences={} bits={} alpha={}",
        algorithm_name(report.variant),
        report.set,
        report.sequences,
        report.bits_per_sequence,
        report.alpha
    )
    .unwrap();
    writeln!(
        s,
        "{:<26} {:>9} {:>11} {:>19} {:>11} {:>6}",
        "Test", "Passed", "Proportion", "Interval", "Uniformity", "Ok"
    )
    .unwrap();
    for t in &report.tests {
        writeln!(
            s,
            "{:<26} {:>9} {:>11.4} {:>19} {:>11} {:>6}",
            t.test_name,
            format!("{}/{}", t.passed, t.applicable),
            t.proportion,
            format!("[{:.4}, {:.4}]", t.interval.0, t.interval.1),
            t.uniformity_p.map_or("-".to_owned(), |p| format!("{p:.6}")),
            if t.within_interval { "yes" } else { "NO" }
        )
        .unwrap();
    }
    s
}

/// `trial,distance` rows.
pub fn write_avalanche_csv<W: Write>(
    result: &AvalancheResult,
    out: W,
) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["trial", "distance"])?;
    for (i, d) in result.distances.iter().enumerate() {
        w.write_record([i.to_string(), d.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// `sequence,key,iv,test,p_value,passed` rows; not-applicable tests have an
/// empty p-value.
pub fn write_battery_csv<W: Write>(report: &BatteryReport, out: W) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["sequence", "key", "iv", "test", "p_value", "passed"])?;
    for rec in &report.per_sequence {
        for r in &rec.results {
            let p = r.p_value().map_or(String::new(), |p| format!("{p:.6}"));
            let passed = r
                .passed(report.alpha)
                .map_or(String::new(), |b| b.to_string());
            w.write_record([
                rec.index.to_string(),
                rec.key.clone(),
                rec.iv.clone(),
                r.test_name.to_owned(),
                p,
                passed,
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{avalanche_experiment, battery_over_keystreams, AvalancheMode, SetSpec};
    use vsc_core::Variant;

    #[test]
    fn avalanche_csv_rows() {
        let r = avalanche_experiment(Variant::Vsc21, 5, 1, AvalancheMode::RandomBit).unwrap();
        let mut buf = Vec::new();
        write_avalanche_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 6);
        assert!(text.starts_with("trial,distance\n0,"));
        assert!(avalanche_table(&[r]).contains("VSC 2.1"));
    }

    #[test]
    fn battery_csv_and_json() {
        let r = battery_over_keystreams(Variant::Vsc21, SetSpec::Random, 2, 4096, 3);
        let mut buf = Vec::new();
        write_battery_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 2 * 9);
        let json: serde_json::Value = serde_json::from_str(&to_json(&r)).unwrap();
        assert_eq!(json["sequences"], 2);
        assert!(json.get("per_sequence").is_none());
        assert!(battery_table(&r).contains("frequency"));
    }
}
