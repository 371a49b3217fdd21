use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polar_fastssc::construct::{construct_code_with, Construction};
use polar_fastssc::fast_ssc::{latency_model_with, latency_reduction_sweep, FastSscDecoder};
use polar_fastssc::hw::{write_trace_jsonl, PuTree};
use polar_fastssc::quant::quantize_frame;
use polar_fastssc::sc::two_bit_precomputed_latency;
use polar_fastssc::sim::{
    random_frame, required_ebn0, run_ber_sweep, throughput_gbps, write_sweep_csv, ChannelConfig,
    DecoderKind, StopRule, SweepConfig,
};
use polar_fastssc::{
    classify_tree, sc_decode, sc_latency_cycles, FloatDomain, PolarCode, QuantDomain, QuantSpec,
    ScVariant,
};

/// Polar-code fast-SSC decoding experiments.
#[derive(Parser, Debug)]
#[command(name = "fastssc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a frozen set and write it in the frozen-set text format.
    Construct(ConstructArgs),
    /// Print the fast-SSC schedule and latency summary of a code.
    Schedule(ScheduleArgs),
    /// Decode one frame, read from a file or drawn from the seeded channel.
    Decode(DecodeArgs),
    /// Monte-Carlo BER/FER sweep written as CSV.
    Ber(BerArgs),
    /// FER curves of several fixed-point formats against float decoding.
    QuantStudy(QuantStudyArgs),
    /// Latency of GA codes across a list of rates.
    LatencySweep(LatencySweepArgs),
    /// Information throughput K * f / cycles.
    Throughput(ThroughputArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Method {
    Ga,
    Bhattacharyya,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Decoder {
    Sc,
    FastSsc,
    Hw,
}

impl From<Decoder> for DecoderKind {
    fn from(d: Decoder) -> Self {
        match d {
            Decoder::Sc => DecoderKind::Sc,
            Decoder::FastSsc => DecoderKind::FastSsc,
            Decoder::Hw => DecoderKind::Hw,
        }
    }
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Code length N.
    #[arg(long)]
    n: Option<usize>,
    /// Information bits K.
    #[arg(long)]
    k: Option<usize>,
    /// Design Eb/N0 in dB for the construction.
    #[arg(long, default_value_t = 2.0)]
    design_snr: f64,
    #[arg(long, value_enum, default_value_t = Method::Ga)]
    method: Method,
    /// Frozen-set file; overrides construction from N and K.
    #[arg(long)]
    frozen_file: Option<PathBuf>,
}

impl CodeArgs {
    fn code(&self) -> Result<PolarCode> {
        if let Some(path) = &self.frozen_file {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let code = PolarCode::from_frozen_text(&text)?;
            if self.n.is_some_and(|n| n != code.len())
                || self.k.is_some_and(|k| k != code.dimension())
            {
                bail!(
                    "--n/--k disagree with frozen file ({}, {})",
                    code.len(),
                    code.dimension()
                );
            }
            return Ok(code);
        }
        let (Some(n), Some(k)) = (self.n, self.k) else {
            bail!("either --frozen-file or both --n and --k are required");
        };
        let c = match self.method {
            Method::Ga => Construction::ga(self.design_snr),
            Method::Bhattacharyya => Construction::bhattacharyya(self.design_snr),
        };
        Ok(construct_code_with(n, k, c)?)
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScheduleArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Two-cycle branches (f, then g) instead of precomputed g.
    #[arg(long)]
    no_precompute: bool,
    /// Write the schedule JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_enum, default_value_t = Decoder::FastSsc)]
    decoder: Decoder,
    /// Fixed-point format C,L,F; float decoding when absent.
    #[arg(long)]
    quant: Option<QuantSpec>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Channel Eb/N0 in dB for the seeded random frame.
    #[arg(long, default_value_t = 2.0)]
    ebn0: f64,
    /// Frame index within the seeded stream.
    #[arg(long, default_value_t = 0)]
    frame: u64,
    /// Whitespace-separated channel LLRs; replaces the random frame.
    #[arg(long)]
    llr_file: Option<PathBuf>,
    /// JSON-lines cycle trace (hardware decoder only).
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    no_precompute: bool,
    /// Output JSON file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BerArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_enum, default_value_t = Decoder::FastSsc)]
    decoder: Decoder,
    #[arg(long)]
    quant: Option<QuantSpec>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated Eb/N0 points in dB.
    #[arg(long, value_delimiter = ',', required = true)]
    ebn0: Vec<f64>,
    #[arg(long, default_value_t = StopRule::default().min_frame_errors)]
    min_frame_errors: u64,
    #[arg(long, default_value_t = StopRule::default().max_frames)]
    max_frames: u64,
    /// CSV output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QuantStudyArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_enum, default_value_t = Decoder::FastSsc)]
    decoder: Decoder,
    /// Fixed-point format C,L,F; repeat for several formats.
    #[arg(long = "quant", required = true)]
    quants: Vec<QuantSpec>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    ebn0: Vec<f64>,
    #[arg(long, default_value_t = 1e-2)]
    target_fer: f64,
    #[arg(long, default_value_t = StopRule::default().min_frame_errors)]
    min_frame_errors: u64,
    #[arg(long, default_value_t = StopRule::default().max_frames)]
    max_frames: u64,
    /// Directory for one CSV per format (`float.csv`, `q_C_L_F.csv`).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct LatencySweepArgs {
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = 2.0)]
    design_snr: f64,
    /// Comma-separated rates; 0.05 to 0.95 in steps of 0.05 when absent.
    #[arg(long, value_delimiter = ',')]
    rates: Vec<f64>,
    /// JSON output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ThroughputArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    cycles: u64,
    /// Clock frequency in GHz.
    #[arg(long)]
    freq: f64,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("FASTSSC_THREADS") {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .with_context(|| format!("FASTSSC_THREADS={v:?}"))?;
            if n == 0 {
                bail!("FASTSSC_THREADS must be positive");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn construct(args: &ConstructArgs) -> Result<()> {
    let code = args.code.code()?;
    output(args.out.as_deref())?.write_all(code.to_frozen_text().as_bytes())?;
    Ok(())
}

fn schedule(args: &ScheduleArgs) -> Result<()> {
    let code = args.code.code()?;
    let n = code.len();
    let report = latency_model_with(&classify_tree(&code), !args.no_precompute);
    let json = report.to_json();
    match &args.out {
        Some(p) => fs::write(p, json + "\n")?,
        None => println!("{json}"),
    }
    let baselines = [
        ("2N-2", sc_latency_cycles(n, ScVariant::Conventional) as f64),
        ("N-1", sc_latency_cycles(n, ScVariant::Precomputed) as f64),
        ("0.75N-1", two_bit_precomputed_latency(n)),
    ];
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "code ({}, {})  nodes {}  total cycles {}",
        n,
        code.dimension(),
        report.entries.len(),
        report.total_cycles
    )?;
    writeln!(out, "{:<10}{:>10}{:>12}", "baseline", "cycles", "reduction")?;
    for (name, cycles) in baselines {
        writeln!(
            out,
            "{:<10}{:>10}{:>11.1}%",
            name,
            cycles,
            100.0 * report.reduction_vs(cycles)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DecodeOutput {
    decoder: &'static str,
    message: Option<Vec<u8>>,
    decoded: Vec<u8>,
    u_hat: Vec<u8>,
    x_hat: Vec<u8>,
    bit_errors: Option<usize>,
    cycles: Option<u64>,
}

fn read_llrs(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.split_whitespace()
        .map(|t| t.parse::<f64>().with_context(|| format!("bad LLR {t:?}")))
        .collect()
}

fn decode(args: &DecodeArgs) -> Result<()> {
    let code = args.code.code()?;
    let (message, llr) = match &args.llr_file {
        Some(p) => (None, read_llrs(p)?),
        None => {
            let ch = ChannelConfig::new(args.ebn0, code.rate(), args.seed)?;
            let (m, l) = random_frame(&code, &ch, 0, args.frame)?;
            (Some(m), l)
        }
    };
    if args.trace.is_some() && args.decoder != Decoder::Hw {
        bail!("--trace needs --decoder hw");
    }
    let mut cycles = None;
    let (u_hat, x_hat, name) = match (args.decoder, args.quant) {
        (Decoder::Sc, None) => {
            let d = sc_decode(&FloatDomain, &code, &llr)?;
            (d.u_hat, d.x_hat, "sc")
        }
        (Decoder::Sc, Some(q)) => {
            let d = sc_decode(&QuantDomain::new(q), &code, &quantize_frame(&llr, &q))?;
            (d.u_hat, d.x_hat, "sc")
        }
        (Decoder::FastSsc, None) => {
            let d = FastSscDecoder::new(FloatDomain, &code).decode(&llr)?;
            (d.u_hat, d.x_hat, "fast-ssc")
        }
        (Decoder::FastSsc, Some(q)) => {
            let d = FastSscDecoder::new(QuantDomain::new(q), &code)
                .decode(&quantize_frame(&llr, &q))?;
            (d.u_hat, d.x_hat, "fast-ssc")
        }
        (Decoder::Hw, q) => {
            let q = q.unwrap_or(QuantSpec::HARDWARE);
            let mut tree = PuTree::new(code.len(), q)?.with_precompute(!args.no_precompute);
            if args.trace.is_some() {
                tree.enable_trace();
            }
            let d =
                polar_fastssc::hw::hw_decode_frame(&mut tree, &code, &quantize_frame(&llr, &q))?;
            if let Some(p) = &args.trace {
                write_trace_jsonl(&tree.take_trace(), BufWriter::new(File::create(p)?))?;
            }
            cycles = Some(d.cycle_trace.total_cycles);
            (d.u_hat, d.x_hat, "hw")
        }
    };
    let decoded = code.gather(&u_hat);
    let bit_errors = message
        .as_ref()
        .map(|m| m.iter().zip(&decoded).filter(|(a, b)| a != b).count());
    let out = DecodeOutput {
        decoder: name,
        message,
        decoded,
        u_hat,
        x_hat,
        bit_errors,
        cycles,
    };
    let mut w = output(args.out.as_deref())?;
    serde_json::to_writer(&mut w, &out)?;
    writeln!(w)?;
    Ok(())
}

fn sweep_config(
    decoder: Decoder,
    quant: Option<QuantSpec>,
    seed: u64,
    min_frame_errors: u64,
    max_frames: u64,
) -> Result<SweepConfig> {
    Ok(SweepConfig {
        decoder: decoder.into(),
        quant,
        stop: StopRule {
            min_frame_errors,
            max_frames,
        },
        seed,
        threads: threads_from_env()?,
        ..Default::default()
    })
}

fn ber(args: &BerArgs) -> Result<()> {
    let code = args.code.code()?;
    let cfg = sweep_config(
        args.decoder,
        args.quant,
        args.seed,
        args.min_frame_errors,
        args.max_frames,
    )?;
    let points = run_ber_sweep(&code, &args.ebn0, &cfg)?;
    write_sweep_csv(&points, output(args.out.as_deref())?)?;
    Ok(())
}

#[derive(Serialize)]
struct StudyRow {
    quant: Option<String>,
    csv: PathBuf,
    required_ebn0_db: Option<f64>,
    gap_db: Option<f64>,
}

fn quant_study(args: &QuantStudyArgs) -> Result<()> {
    if args.decoder == Decoder::Hw {
        bail!("the study compares against float decoding; use --decoder sc or fast-ssc");
    }
    let code = args.code.code()?;
    fs::create_dir_all(&args.out)?;
    let mut rows = Vec::new();
    let mut float_req = None;
    for quant in std::iter::once(None).chain(args.quants.iter().copied().map(Some)) {
        let cfg = sweep_config(
            args.decoder,
            quant,
            args.seed,
            args.min_frame_errors,
            args.max_frames,
        )?;
        let points = run_ber_sweep(&code, &args.ebn0, &cfg)?;
        let name = match quant {
            None => "float.csv".to_string(),
            Some(q) => format!("q_{}.csv", q.to_string().replace(',', "_")),
        };
        let csv = args.out.join(name);
        write_sweep_csv(&points, File::create(&csv)?)?;
        let req = required_ebn0(&points, args.target_fer);
        if quant.is_none() {
            float_req = req;
        }
        rows.push(StudyRow {
            quant: quant.map(|q| q.to_string()),
            csv,
            required_ebn0_db: req,
            gap_db: req.zip(float_req).map(|(q, f)| q - f),
        });
    }
    serde_json::to_writer_pretty(io::stdout().lock(), &rows)?;
    println!();
    Ok(())
}

fn latency_sweep(args: &LatencySweepArgs) -> Result<()> {
    let rates: Vec<f64> = if args.rates.is_empty() {
        (1..20).map(|i| i as f64 * 0.05).collect()
    } else {
        args.rates.clone()
    };
    let rows = latency_reduction_sweep(args.n, &rates, args.design_snr)?;
    let mut w = output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, &rows)?;
    writeln!(w)?;
    Ok(())
}

fn throughput(args: &ThroughputArgs) -> Result<()> {
    if args.cycles == 0 {
        bail!("--cycles must be positive");
    }
    println!("{:.4}", throughput_gbps(args.k, args.cycles, args.freq));
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Schedule(a) => schedule(a),
        Command::Decode(a) => decode(a),
        Command::Ber(a) => ber(a),
        Command::QuantStudy(a) => quant_study(a),
        Command::LatencySweep(a) => latency_sweep(a),
        Command::Throughput(a) => throughput(a),
    }
}

fn fail(kind: &str, message: String, code: u8) -> ExitCode {
    eprintln!(
        "{}",
        serde_json::json!({ "error": kind, "message": message })
    );
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("usage", e.to_string().trim().to_string(), 2),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail("runtime", format!("{e:#}"), 1),
    }
}
