use std::fs::File;
use std::io::{self, ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use perm_poly::{bijectivity_check, scaled, BijectivityReport, GenericVectorMap, Rule};
use vsc_analysis::report::{
    avalanche_table, battery_table, bench_table, to_json, write_avalanche_csv, write_battery_csv,
};
use vsc_analysis::{
    avalanche_experiment, battery_over_keystreams, bench_compare, AvalancheMode, AvalancheResult,
    BenchResult, PatternKind, SetSpec, DEFAULT_SEED,
};
use vsc_core::{kat, InitVector, KeyMaterial, KeyRule, Keystream, Variant};

const CHUNK: usize = 64 * 1024;

#[derive(Parser)]
#[command(
    name = "vsc",
    version,
    about = "VSC keystream ciphers, bijectivity sweeps and experiments"
)]
struct Cli {
    /// Worker threads for parallel experiments (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// XOR the input with the keystream.
    Encrypt(CryptArgs),
    /// Same operation as encrypt.
    Decrypt(CryptArgs),
    /// Write raw keystream bytes.
    Keystream(KeystreamArgs),
    /// Check a known-answer vector file.
    Kat(KatArgs),
    /// Exhaustively test a coupled permutation polynomial map for bijectivity.
    VerifyBijection(BijectionArgs),
    /// Avalanche of the IV preprocessing.
    Avalanche(AvalancheArgs),
    /// Randomness battery over keystreams.
    Battery(BatteryArgs),
    /// Keystream throughput.
    Bench(BenchArgs),
}

#[derive(Args)]
struct KeyArgs {
    #[arg(long, value_parser = parse_variant)]
    variant: Variant,
    /// 128-bit key, 32 hex digits.
    #[arg(long)]
    key: String,
    /// 128-bit IV, 32 hex digits.
    #[arg(long)]
    iv: String,
}

#[derive(Args)]
struct CryptArgs {
    #[command(flatten)]
    keys: KeyArgs,
    /// Input path, `-` for stdin.
    #[arg(long = "in", default_value = "-")]
    input: PathBuf,
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct KeystreamArgs {
    #[command(flatten)]
    keys: KeyArgs,
    /// Number of keystream bytes.
    #[arg(long)]
    bytes: u64,
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    out: PathBuf,
    /// Write lowercase hex followed by a newline instead of raw bytes.
    #[arg(long)]
    hex: bool,
}

#[derive(Args)]
struct KatArgs {
    /// Vector file, `-` for stdin.
    #[arg(long)]
    file: PathBuf,
}

#[derive(Args)]
struct BijectionArgs {
    /// Coupling rule: thm1 (clear the low two bits, set bit 0) or thm2 (4x + 1).
    #[arg(long, value_parser = parse_rule, required_unless_present = "scaled", conflicts_with = "scaled")]
    rule: Option<Rule>,
    /// Bits per element.
    #[arg(long)]
    n: u32,
    /// Number of elements.
    #[arg(long, required_unless_present = "scaled", conflicts_with = "scaled")]
    m: Option<usize>,
    /// Exclude tuples whose elements are all odd.
    #[arg(long, conflicts_with = "scaled")]
    restrict: bool,
    /// Check the eight-word round with n-bit words instead of a generic map.
    #[arg(long)]
    scaled: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct AvalancheArgs {
    /// Variant to measure; repeat for several. Defaults to vsc20 and vsc21.
    #[arg(long, value_parser = parse_variant)]
    variant: Vec<Variant>,
    /// Random inputs per variant.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Flip every input bit of each random input instead of one random bit.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    Random,
    SingleOne,
    SingleZeroPaired,
}

impl From<SetArg> for SetSpec {
    fn from(s: SetArg) -> Self {
        match s {
            SetArg::Random => SetSpec::Random,
            SetArg::SingleOne => SetSpec::Pattern(PatternKind::SingleOne),
            SetArg::SingleZeroPaired => SetSpec::Pattern(PatternKind::SingleZeroPaired),
        }
    }
}

#[derive(Args)]
struct BatteryArgs {
    #[arg(long, value_parser = parse_variant)]
    variant: Variant,
    /// Source of the (key, iv) pairs.
    #[arg(long, value_enum, default_value_t = SetArg::Random)]
    set: SetArg,
    /// Number of keystreams (pattern sets hold at most 256).
    #[arg(long, default_value_t = 100)]
    sequences: usize,
    /// Bits per keystream.
    #[arg(long, default_value_t = 1_000_000)]
    bits: usize,
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    /// Variant to time; repeat for several. Defaults to all three.
    #[arg(long, value_parser = parse_variant)]
    variant: Vec<Variant>,
    /// Keystream bytes per repetition.
    #[arg(long, default_value_t = 16 << 20)]
    bytes: u64,
    /// Repetitions; the fastest one is reported.
    #[arg(long, default_value_t = 5)]
    reps: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    match cli.command {
        Command::Encrypt(a) | Command::Decrypt(a) => crypt(&a),
        Command::Keystream(a) => keystream(&a),
        Command::Kat(a) => return kat_check(&a),
        Command::VerifyBijection(a) => verify_bijection(&a),
        Command::Avalanche(a) => avalanche(&a),
        Command::Battery(a) => battery(&a),
        Command::Bench(a) => bench(&a),
    }?;
    Ok(ExitCode::SUCCESS)
}

fn open_input(path: &Path) -> Result<Box<dyn Read>> {
    if path == Path::new("-") {
        return Ok(Box::new(io::stdin().lock()));
    }
    let f =
        File::open(path).with_context(|| format!("cannot open input file {}", path.display()))?;
    Ok(Box::new(f))
}

fn open_output(path: &Path) -> Result<Box<dyn Write>> {
    if path == Path::new("-") {
        return Ok(Box::new(io::stdout().lock()));
    }
    let f = File::create(path)
        .with_context(|| format!("cannot create output file {}", path.display()))?;
    Ok(Box::new(f))
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .context("cannot write to stdout")?;
    out.flush().context("cannot write to stdout")
}

fn keystream_for(args: &KeyArgs) -> Result<Keystream> {
    let key = KeyMaterial::from_hex(&args.key).context("invalid --key")?;
    let iv = InitVector::from_hex(&args.iv).context("invalid --iv")?;
    let cfg = args.variant.config();
    if cfg.key_rule == KeyRule::DLsbZero && key.d_lsb() {
        eprintln!(
            "warning: {} ignores the least significant key bit; it was 1 and has been cleared",
            args.variant
        );
    }
    Ok(Keystream::new(cfg, &key, &iv))
}

fn crypt(args: &CryptArgs) -> Result<()> {
    let mut ks = keystream_for(&args.keys)?;
    let mut input = open_input(&args.input)?;
    let mut output = open_output(&args.out)?;
    let mut buf = vec![0u8; CHUNK];
    loop {
        let n = match input.read(&mut buf) {
            Ok(0) => break,
            Ok(n) => n,
            Err(e) if e.kind() == ErrorKind::Interrupted => continue,
            Err(e) => return Err(e).context("cannot read input"),
        };
        ks.apply(&mut buf[..n]);
        output.write_all(&buf[..n]).context("cannot write output")?;
    }
    output.flush().context("cannot write output")
}

fn keystream(args: &KeystreamArgs) -> Result<()> {
    let mut ks = keystream_for(&args.keys)?;
    let mut output = open_output(&args.out)?;
    let mut buf = vec![0u8; CHUNK];
    let mut left = args.bytes;
    while left > 0 {
        let n = left.min(CHUNK as u64) as usize;
        ks.fill(&mut buf[..n]);
        if args.hex {
            output.write_all(hex::encode(&buf[..n]).as_bytes())
        } else {
            output.write_all(&buf[..n])
        }
        .context("cannot write output")?;
        left -= n as u64;
    }
    if args.hex {
        output.write_all(b"\n").context("cannot write output")?;
    }
    output.flush().context("cannot write output")
}

fn kat_check(args: &KatArgs) -> Result<ExitCode> {
    let mut text = String::new();
    open_input(&args.file)?
        .read_to_string(&mut text)
        .with_context(|| format!("cannot read vector file {}", args.file.display()))?;
    let vectors = kat::parse(&text).context("malformed vector file")?;
    if vectors.is_empty() {
        bail!("vector file {} holds no vectors", args.file.display());
    }
    let mismatches = kat::verify(&vectors);
    let mut report = String::new();
    for m in &mismatches {
        report.push_str(&format!(
            "MISMATCH {}\n         got keystream={}\n",
            m.expected,
            hex::encode(m.actual)
        ));
    }
    report.push_str(&format!(
        "vectors={} mismatches={}\n",
        vectors.len(),
        mismatches.len()
    ));
    emit(&report)?;
    Ok(if mismatches.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn verify_bijection(args: &BijectionArgs) -> Result<()> {
    let report: BijectivityReport = if args.scaled {
        scaled::scaled_round_check(args.n)?
    } else {
        let rule = args.rule.expect("clap requires --rule without --scaled");
        let m = args.m.expect("clap requires --m without --scaled");
        bijectivity_check(&GenericVectorMap::new(rule, args.n, m)?, args.restrict)?
    };
    match args.format {
        Format::Text => emit(&report.to_text()),
        Format::Json => emit(&format!("{}\n", report.to_json())),
        Format::Csv => {
            let mut s = String::from("field,value\n");
            for line in report.to_text().lines() {
                if let Some((k, v)) = line.split_once('=') {
                    s.push_str(&format!("{k},\"{}\"\n", v.replace('"', "\"\"")));
                }
            }
            emit(&s)
        }
    }
}

fn avalanche(args: &AvalancheArgs) -> Result<()> {
    let variants = if args.variant.is_empty() {
        vec![Variant::Vsc20, Variant::Vsc21]
    } else {
        args.variant.clone()
    };
    let mode = if args.exhaustive {
        AvalancheMode::EveryBit
    } else {
        AvalancheMode::RandomBit
    };
    if args.format == Format::Csv && variants.len() != 1 {
        bail!("csv output needs exactly one --variant");
    }
    let results = variants
        .iter()
        .map(|&v| {
            avalanche_experiment(v, args.trials, args.seed, mode)
                .with_context(|| format!("avalanche for {v}"))
        })
        .collect::<Result<Vec<AvalancheResult>>>()?;
    match args.format {
        Format::Text => emit(&avalanche_table(&results)),
        Format::Json => emit(&format!("{}\n", to_json(&results))),
        Format::Csv => {
            let mut out = io::stdout().lock();
            write_avalanche_csv(&results[0], &mut out).context("cannot write csv")
        }
    }
}

fn battery(args: &BatteryArgs) -> Result<()> {
    if args.sequences == 0 || args.bits == 0 {
        bail!("--sequences and --bits must be positive");
    }
    let report = battery_over_keystreams(
        args.variant,
        args.set.into(),
        args.sequences,
        args.bits,
        args.seed,
    );
    match args.format {
        Format::Text => emit(&battery_table(&report)),
        Format::Json => emit(&format!("{}\n", to_json(&report))),
        Format::Csv => {
            let mut out = io::stdout().lock();
            write_battery_csv(&report, &mut out).context("cannot write csv")
        }
    }
}

fn bench(args: &BenchArgs) -> Result<()> {
    if args.bytes == 0 || args.reps == 0 {
        bail!("--bytes and --reps must be positive");
    }
    let variants = if args.variant.is_empty() {
        Variant::ALL.to_vec()
    } else {
        args.variant.clone()
    };
    let results: Vec<BenchResult> = bench_compare(&variants, args.bytes, args.reps);
    match args.format {
        Format::Text => emit(&bench_table(&results)),
        Format::Json => emit(&format!("{}\n", to_json(&results))),
        Format::Csv => {
            let mut s = String::from(
                "variant,bytes_processed,repetitions,elapsed,throughput_mbps,setup_latency_ns\n",
            );
            for r in &results {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.variant,
                    r.bytes_processed,
                    r.repetitions,
                    r.elapsed,
                    r.throughput_mbps,
                    r.setup_latency_ns
                ));
            }
            emit(&s)
        }
    }
}
