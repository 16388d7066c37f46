//! Command-line interface: generation, single-sequence testing,
//! campaigns, and report rendering.
//!
//! Exit codes are a stable contract: 0 success, 1 at least one
//! applicable test failed, 2 usage or configuration problem, 3 I/O
//! failure. Campaign verdicts live in the report, not the exit code.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use rand_sts::campaign::{
    histogram_csv, render_report, run_campaign, sci6, CampaignConfig, CampaignReport, ReportFormat,
};
use rand_sts::generators::GeneratorSpec;
use rand_sts::suite::{run_test, TestParams, Template};
use rand_sts::{BitSequence, Error, Result, TestId};

const TEST_TABLE: &str = "\
Tests (by number):
   1  frequency                  9  universal
   2  block-frequency           10  linear-complexity
   3  runs                      11  serial
   4  longest-run               12  approximate-entropy
   5  matrix-rank               13  cumulative-sums
   6  spectral                  14  random-excursions
   7  non-overlapping-template  15  random-excursions-variant
   8  overlapping-template";

#[derive(Parser)]
#[command(
    name = "rand-sts",
    version,
    about = "Statistical randomness test battery in the style of NIST SP 800-22",
    after_help = TEST_TABLE
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Produce a bit stream from a reference generator
    Generate(GenerateArgs),
    /// Run selected tests on one sequence read from a file
    Test(TestArgs),
    /// Run a multi-sequence campaign described by a config file
    Campaign(CampaignArgs),
    /// Re-render a saved campaign report (JSON) as a table
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    /// One '0' or '1' character per bit
    Ascii,
    /// Packed bytes, most significant bit first
    Binary,
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator family: pm, knuth, or bbs
    #[arg(long = "gen", value_name = "FAMILY")]
    gen: String,
    /// Congruential seed (pm, knuth)
    #[arg(long)]
    seed: Option<u64>,
    /// Most significant bits kept per word (pm, knuth)
    #[arg(long)]
    bits_per_word: Option<u32>,
    /// Blum-Blum-Shub prime p, decimal (bbs)
    #[arg(long)]
    p: Option<String>,
    /// Blum-Blum-Shub prime q, decimal (bbs)
    #[arg(long)]
    q: Option<String>,
    /// Blum-Blum-Shub start value, decimal (bbs)
    #[arg(long)]
    x0: Option<String>,
    /// Number of bits to produce
    #[arg(long)]
    n: usize,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = FileFormat::Ascii)]
    format: FileFormat,
    /// Output path; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TestArgs {
    /// Input bit file
    #[arg(long)]
    input: PathBuf,
    /// Input encoding
    #[arg(long, value_enum, default_value_t = FileFormat::Ascii)]
    format: FileFormat,
    /// Bit count for binary input; defaults to 8 times the file size
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated test numbers, or "all"
    #[arg(long, default_value = "all")]
    tests: String,
    /// Significance level for the PASS/FAIL column
    #[arg(long, default_value_t = 0.01)]
    alpha: f64,
    #[command(flatten)]
    params: ParamFlags,
}

/// Per-test knobs, mirroring the campaign config keys.
#[derive(Args)]
struct ParamFlags {
    /// Block size for the within-block frequency test
    #[arg(long, value_name = "M")]
    block_m: Option<usize>,
    /// Template bits for the non-overlapping matches test
    #[arg(long, value_name = "BITS")]
    template: Option<String>,
    /// Block count for the non-overlapping matches test
    #[arg(long, value_name = "N")]
    t7_blocks: Option<usize>,
    /// Template length for the overlapping matches test
    #[arg(long, value_name = "M")]
    t8_m: Option<usize>,
    /// Use the published class probabilities in the overlapping matches test
    #[arg(long)]
    t8_legacy_pi: bool,
    /// Window length for the universal test
    #[arg(long, value_name = "L")]
    universal_l: Option<u32>,
    /// Block length for the linear complexity test
    #[arg(long, value_name = "M")]
    lc_m: Option<usize>,
    /// Window width for the serial test
    #[arg(long, value_name = "M")]
    serial_m: Option<u32>,
    /// Window width for the approximate entropy test
    #[arg(long, value_name = "M")]
    apen_m: Option<u32>,
    /// Spectral threshold with log base 10 instead of the natural log
    #[arg(long)]
    dft_log10: bool,
    /// Spectral variance n(0.95)(0.05)/4 instead of /2
    #[arg(long)]
    dft_quarter_variance: bool,
}

#[derive(Args)]
struct CampaignArgs {
    /// Campaign config file (key=value lines)
    #[arg(long)]
    config: PathBuf,
    /// Report output path (TSV)
    #[arg(long, default_value = "report.tsv")]
    out: PathBuf,
    /// Also save the full report as JSON for later re-rendering
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also save the P-value histograms as long-format CSV
    #[arg(long)]
    emit_hist: Option<PathBuf>,
    /// Worker threads; defaults to RAND_STS_JOBS, then all cores
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Tsv,
    Text,
}

#[derive(Args)]
struct ReportArgs {
    /// Saved JSON report
    #[arg(long)]
    input: PathBuf,
    /// Output layout
    #[arg(long, value_enum, default_value_t = RenderFormat::Text)]
    format: RenderFormat,
}

/// Parses arguments, runs the chosen subcommand, and maps errors to
/// the exit-code contract.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Test(args) => cmd_test(args),
        Command::Campaign(args) => cmd_campaign(args),
        Command::Report(args) => cmd_report(args),
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<i32> {
    let spec = build_spec(&args)?;
    let seq = spec.generate(args.n)?;
    let payload = match args.format {
        FileFormat::Ascii => {
            seq.iter().map(|b| if b == 1 { '1' } else { '0' }).collect::<String>().into_bytes()
        }
        FileFormat::Binary => seq.to_bytes(),
    };
    match &args.out {
        Some(path) => write_file(path, &payload)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&payload)?;
            out.flush()?;
        }
    }
    eprintln!("{} bits", seq.len());
    Ok(0)
}

fn build_spec(args: &GenerateArgs) -> Result<GeneratorSpec> {
    let congruential_flags = args.seed.is_some() || args.bits_per_word.is_some();
    let bbs_flags = args.p.is_some() || args.q.is_some() || args.x0.is_some();
    match args.gen.as_str() {
        "pm" | "knuth" if bbs_flags => Err(Error::Config(
            "--p, --q, and --x0 apply only to the bbs generator".to_string(),
        )),
        "pm" => {
            let seed = args.seed.unwrap_or(1);
            let seed = u32::try_from(seed)
                .map_err(|_| Error::Config(format!("pm seed {seed} does not fit in 32 bits")))?;
            Ok(GeneratorSpec::ParkMiller {
                seed,
                bits_per_word: args.bits_per_word.unwrap_or(8),
            })
        }
        "knuth" => Ok(GeneratorSpec::Knuth {
            seed: args.seed.unwrap_or(1),
            bits_per_word: args.bits_per_word.unwrap_or(32),
        }),
        "bbs" if congruential_flags => Err(Error::Config(
            "--seed and --bits-per-word apply only to the pm and knuth generators".to_string(),
        )),
        "bbs" => Ok(GeneratorSpec::Bbs {
            p: parse_biguint(&args.p, "--p")?,
            q: parse_biguint(&args.q, "--q")?,
            x0: parse_biguint(&args.x0, "--x0")?,
        }),
        other => Err(Error::Config(format!(
            "unknown generator {other:?}; expected pm, knuth, or bbs"
        ))),
    }
}

fn parse_biguint(value: &Option<String>, flag: &str) -> Result<BigUint> {
    let text = value
        .as_deref()
        .ok_or_else(|| Error::Config(format!("{flag} is required for the bbs generator")))?;
    text.parse()
        .map_err(|e| Error::Config(format!("{flag}: {e}")))
}

fn cmd_test(args: TestArgs) -> Result<i32> {
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        return Err(Error::Config(format!(
            "significance level {} outside (0, 1)",
            args.alpha
        )));
    }
    let bytes = read_file(&args.input)?;
    let seq = match args.format {
        FileFormat::Ascii => {
            let text = String::from_utf8(bytes).map_err(|_| {
                Error::Config(format!("{}: not UTF-8 text", args.input.display()))
            })?;
            BitSequence::from_ascii(&text)?
        }
        FileFormat::Binary => {
            let n = args.n.unwrap_or(bytes.len() * 8);
            BitSequence::from_bytes(&bytes, n)?
        }
    };
    let tests = TestId::parse_list(&args.tests)?;
    for id in &tests {
        if seq.len() < id.min_length() {
            return Err(Error::Length(format!(
                "test {} ({}) needs at least {} bits; input has {}",
                id.get(),
                id.name(),
                id.min_length(),
                seq.len()
            )));
        }
    }
    let params = args.params.to_params()?;
    let mut out = std::io::stdout().lock();
    let mut any_fail = false;
    for id in tests {
        let result = run_test(&seq, id, &params)?;
        for p in &result.p_values {
            let verdict = if !result.applicable {
                let reason = result.fail_reason.as_deref().unwrap_or("not applicable");
                format!("N/A ({reason})")
            } else if p.passes(args.alpha) {
                "PASS".to_string()
            } else {
                any_fail = true;
                "FAIL".to_string()
            };
            writeln!(out, "{}  {}  {}", id.get(), sci6(p.value()), verdict)?;
        }
        if let Some(warning) = &result.warning {
            eprintln!("test {}: {warning}", id.get());
        }
    }
    Ok(if any_fail { 1 } else { 0 })
}

impl ParamFlags {
    fn to_params(&self) -> Result<TestParams> {
        let mut params = TestParams {
            block_frequency_m: self.block_m,
            t8_legacy_pi: self.t8_legacy_pi,
            universal_l: self.universal_l,
            serial_m: self.serial_m,
            dft_log10: self.dft_log10,
            dft_quarter_variance: self.dft_quarter_variance,
            ..TestParams::default()
        };
        if let Some(t) = &self.template {
            params.template = Some(Template::from_ascii(t)?);
        }
        if let Some(v) = self.t7_blocks {
            params.t7_blocks = v;
        }
        if let Some(v) = self.t8_m {
            params.t8_m = v;
        }
        if let Some(v) = self.lc_m {
            params.lc_m = v;
        }
        if let Some(v) = self.apen_m {
            params.apen_m = v;
        }
        Ok(params)
    }
}

fn cmd_campaign(args: CampaignArgs) -> Result<i32> {
    let config = CampaignConfig::from_file(&args.config)?;
    let jobs = resolve_jobs(args.jobs)?;
    let report = run_campaign(&config, jobs)?;
    write_file(&args.out, render_report(&report, ReportFormat::Tsv).as_bytes())?;
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| Error::Config(format!("report serialization: {e}")))?;
        write_file(path, json.as_bytes())?;
    }
    if let Some(path) = &args.emit_hist {
        write_file(path, histogram_csv(&report).as_bytes())?;
    }
    eprintln!(
        "{}: {} sequences through {} tests, report in {}",
        report.generator,
        report.sequences,
        report.rows.len(),
        args.out.display()
    );
    Ok(0)
}

fn resolve_jobs(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("RAND_STS_JOBS") {
        Ok(v) => {
            let n: usize = v.trim().parse().map_err(|_| {
                Error::Config(format!("RAND_STS_JOBS: {v:?} is not a worker count"))
            })?;
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn cmd_report(args: ReportArgs) -> Result<i32> {
    let bytes = read_file(&args.input)?;
    let report: CampaignReport = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Config(format!("{}: {e}", args.input.display())))?;
    let format = match args.format {
        RenderFormat::Tsv => ReportFormat::Tsv,
        RenderFormat::Text => ReportFormat::Text,
    };
    print!("{}", render_report(&report, format));
    Ok(0)
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::from(e).with_context(path.display().to_string()))
}

fn write_file(path: &Path, payload: &[u8]) -> Result<()> {
    std::fs::write(path, payload).map_err(|e| Error::from(e).with_context(path.display().to_string()))
}
