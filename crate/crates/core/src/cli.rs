//! Command-line front end behind the `decaybell` binary.
//!
//! Every subcommand writes one primary output to `--out` (stdout when
//! absent) in the format chosen by `--format`; side outputs have their own
//! path flags. Exit codes: 0 success, 2 usage error, 3 data or
//! configuration error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bell::{kaon_chsh_scan, OutcomeMapping, ScanOptions, TimeGrid};
use crate::error::Error;
use crate::hyperon::{read_events_csv, sample_events_with_workers, witness_from_events, write_events_csv};
use crate::kaon::{oscillation_probabilities, FlavorState, KaonConstants};
use crate::numfmt::f17;
use crate::qkd::{run_session_with_workers, Eavesdropper, ProtocolConfig, SessionReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "decaybell", version, about = "Bell tests with decaying kaons and hyperons")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Kaon constants JSON file.
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "preset")]
    pub constants: Option<PathBuf>,
    /// Bundled constants preset: physical, cp-conserving or no-decay.
    #[arg(long, global = true, default_value = "physical")]
    pub preset: String,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Primary output file; stdout when absent.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Primary output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel work. Results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Flavour content of a single kaon over time (csv: t,p_K0,p_K0bar,p_decayed).
    KaonOscillate(OscillateArgs),
    /// CHSH scan over four measurement times (json: summary, csv: t1,t2,t3,t4,S).
    KaonChsh(KaonChshArgs),
    /// Hyperon-pair events and the witness (json: witness report, csv: events).
    Hyperon(HyperonArgs),
    /// Key-distribution session (json: security report, csv: transcript).
    Qkd(QkdArgs),
    /// Print the active constants and their hash.
    Constants,
}

#[derive(Args, Debug)]
pub struct OscillateArgs {
    #[arg(long, value_enum, default_value = "k0")]
    pub initial: FlavorArg,
    /// Largest proper time.
    #[arg(long, required_unless_present = "d_max")]
    pub t_max: Option<f64>,
    /// Largest lab distance; needs --velocity.
    #[arg(long, requires = "velocity", conflicts_with = "t_max")]
    pub d_max: Option<f64>,
    /// Lab distance per unit proper time; adds a distance column.
    #[arg(long)]
    pub velocity: Option<f64>,
    /// Grid points including both ends.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    #[value(name = "k0", alias = "K0")]
    K0,
    #[value(name = "k0bar", alias = "K0bar")]
    K0bar,
}

impl From<FlavorArg> for FlavorState {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::K0 => FlavorState::K0,
            FlavorArg::K0bar => FlavorState::K0bar,
        }
    }
}

#[derive(Args, Debug)]
pub struct KaonChshArgs {
    /// Question flavours for (n, m, n′, m′): one value for all four, or four
    /// comma-separated values.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "k0bar")]
    pub flavors: Vec<FlavorArg>,
    /// Grid points per time axis.
    #[arg(long, default_value_t = 40)]
    pub points: usize,
    #[arg(long, default_value_t = 0.0)]
    pub t_min: f64,
    /// Upper end of the time grid; default 4/Γ_S (one period without decay).
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Map yes → −1 instead of +1.
    #[arg(long)]
    pub flip: bool,
    /// Skip the simplex refinement.
    #[arg(long)]
    pub no_refine: bool,
    /// Also write the scan table CSV here.
    #[arg(long, value_name = "PATH")]
    pub table: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HyperonArgs {
    #[arg(long, default_value_t = 1_000_000)]
    pub count: usize,
    /// Product of the two decay asymmetries.
    #[arg(long, default_value_t = crate::hyperon::DEFAULT_ALPHA_PRODUCT, allow_negative_numbers = true)]
    pub alpha_product: f64,
    /// Read events from this CSV instead of sampling.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["count", "alpha_product"])]
    pub events_in: Option<PathBuf>,
    /// Also write the events CSV here.
    #[arg(long, value_name = "PATH")]
    pub events_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct QkdArgs {
    #[arg(long, default_value_t = 100_000)]
    pub pairs: usize,
    /// none, uniform or fixed:x,y,z, optionally followed by @fraction.
    #[arg(long, default_value = "none")]
    pub eve: Eavesdropper,
    /// Also write the transcript CSV here.
    #[arg(long, value_name = "PATH")]
    pub transcript: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the command. Returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DATA
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    run(std::env::args_os(), &mut out, &mut io::stderr())
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Outcome {
    let g = &cli.global;
    if g.workers == Some(0) {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    match &cli.command {
        Command::KaonOscillate(a) => oscillate(g, a, stdout),
        Command::KaonChsh(a) => kaon_chsh(g, a, stdout),
        Command::Hyperon(a) => hyperon(g, a, stdout),
        Command::Qkd(a) => qkd(g, a, stdout),
        Command::Constants => constants(g, stdout),
    }
}

fn load_constants(g: &GlobalArgs) -> std::result::Result<KaonConstants, Failure> {
    match &g.constants {
        Some(path) => Ok(KaonConstants::load(path)?),
        None => match KaonConstants::preset_json(&g.preset) {
            Some(text) => Ok(KaonConstants::from_json(text)?),
            None => Err(Failure::Usage(format!(
                "unknown preset '{}' (expected physical, cp-conserving or no-decay)",
                g.preset
            ))),
        },
    }
}

fn emit(path: Option<&Path>, stdout: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> crate::Result<()>) -> Outcome {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => body(stdout)?,
    }
    Ok(())
}

fn write_json<T: Serialize>(value: &T, w: &mut dyn Write) -> crate::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

#[derive(Serialize)]
struct OscillationRow {
    t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<f64>,
    #[serde(rename = "p_K0")]
    p_k0: f64,
    #[serde(rename = "p_K0bar")]
    p_k0bar: f64,
    p_decayed: f64,
}

fn oscillate(g: &GlobalArgs, a: &OscillateArgs, stdout: &mut dyn Write) -> Outcome {
    let c = load_constants(g)?;
    if let Some(v) = a.velocity {
        if !(v.is_finite() && v > 0.0) {
            return Err(usage("--velocity must be positive"));
        }
    }
    let t_max = match (a.t_max, a.d_max, a.velocity) {
        (Some(t), _, _) => t,
        (None, Some(d), Some(v)) => d / v,
        _ => return Err(usage("give --t-max, or --d-max with --velocity")),
    };
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(usage("the time range must be positive and finite"));
    }
    if a.steps < 2 {
        return Err(usage("--steps must be at least 2"));
    }
    let h = t_max / (a.steps - 1) as f64;
    let rows = (0..a.steps)
        .map(|i| {
            let t = if i + 1 == a.steps { t_max } else { h * i as f64 };
            let p = oscillation_probabilities(a.initial.into(), t, &c)?;
            Ok(OscillationRow {
                t,
                d: a.velocity.map(|v| v * t),
                p_k0: p.p_k0,
                p_k0bar: p.p_k0bar,
                p_decayed: p.p_decayed,
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    emit(g.out.as_deref(), stdout, |w| match g.format.unwrap_or(Format::Csv) {
        Format::Json => write_json(&rows, w),
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            let mut header = vec!["t"];
            if a.velocity.is_some() {
                header.push("d");
            }
            header.extend(["p_K0", "p_K0bar", "p_decayed"]);
            out.write_record(&header)?;
            for r in &rows {
                let mut rec = vec![f17(r.t)];
                rec.extend(r.d.map(f17));
                rec.extend([f17(r.p_k0), f17(r.p_k0bar), f17(r.p_decayed)]);
                out.write_record(&rec)?;
            }
            out.flush()?;
            Ok(())
        }
    })
}

fn kaon_chsh(g: &GlobalArgs, a: &KaonChshArgs, stdout: &mut dyn Write) -> Outcome {
    let c = load_constants(g)?;
    let flavors: [FlavorState; 4] = match a.flavors.as_slice() {
        [f] => [(*f).into(); 4],
        [f1, f2, f3, f4] => [(*f1).into(), (*f2).into(), (*f3).into(), (*f4).into()],
        _ => return Err(usage("--flavors takes one or four values")),
    };
    let default = TimeGrid::default_for(&c)?;
    let grid = TimeGrid::new(a.t_min, a.t_max.unwrap_or(default.t_max), a.points)
        .map_err(|e| usage(format!("bad grid: {e}")))?;
    if !(grid.t_min.is_finite() && grid.t_max.is_finite() && grid.t_min >= 0.0) {
        return Err(usage("grid bounds must be finite and non-negative"));
    }
    let opts = ScanOptions {
        refine: !a.no_refine,
        mapping: if a.flip { OutcomeMapping::YesMinus } else { OutcomeMapping::YesPlus },
        workers: g.workers,
        ..ScanOptions::default()
    };
    let result = kaon_chsh_scan(&c, flavors, &grid, &opts)?;
    if let Some(path) = &a.table {
        emit(Some(path), stdout, |w| result.table.write_csv(w))?;
    }
    let summary = result.summary(&c);
    emit(g.out.as_deref(), stdout, |w| match g.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&summary, w),
        Format::Csv => result.table.write_csv(w),
    })
}

fn hyperon(g: &GlobalArgs, a: &HyperonArgs, stdout: &mut dyn Write) -> Outcome {
    let batch = match &a.events_in {
        Some(path) => read_events_csv(File::open(path)?)?,
        None => {
            if a.count == 0 {
                return Err(usage("--count must be at least 1"));
            }
            if !(a.alpha_product.is_finite() && a.alpha_product.abs() <= 1.0) {
                return Err(usage("--alpha-product must lie in [-1, 1]"));
            }
            // split the product evenly over the two asymmetries
            let root = a.alpha_product.abs().sqrt();
            sample_events_with_workers(root, a.alpha_product.signum() * root, a.count, g.seed, g.workers)?
        }
    };
    if let Some(path) = &a.events_out {
        emit(Some(path), stdout, |w| write_events_csv(&batch, w))?;
    }
    let report = witness_from_events(&batch)?;
    emit(g.out.as_deref(), stdout, |w| match g.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&report, w),
        Format::Csv => write_events_csv(&batch, w),
    })
}

fn qkd(g: &GlobalArgs, a: &QkdArgs, stdout: &mut dyn Write) -> Outcome {
    if a.pairs == 0 {
        return Err(usage("--pairs must be at least 1"));
    }
    let cfg = ProtocolConfig::new(a.pairs, g.seed).with_eve(a.eve);
    let out = run_session_with_workers(&cfg, g.workers)?;
    if let Some(path) = &a.transcript {
        emit(Some(path), stdout, |w| out.transcript.write_csv(w))?;
    }
    let report = SessionReport::new(&cfg, &out.report);
    emit(g.out.as_deref(), stdout, |w| match g.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&report, w),
        Format::Csv => out.transcript.write_csv(w),
    })
}

#[derive(Serialize)]
struct ConstantsReport {
    source: String,
    #[serde(rename = "gamma_S")]
    gamma_s: f64,
    #[serde(rename = "gamma_L")]
    gamma_l: f64,
    delta_m: f64,
    epsilon_re: f64,
    epsilon_im: f64,
    overlap: f64,
    hash: String,
}

fn constants(g: &GlobalArgs, stdout: &mut dyn Write) -> Outcome {
    let c = load_constants(g)?;
    let source = match &g.constants {
        Some(p) => p.display().to_string(),
        None => format!("preset:{}", g.preset),
    };
    let report = ConstantsReport {
        source,
        gamma_s: c.gamma_s,
        gamma_l: c.gamma_l,
        delta_m: c.delta_m(),
        epsilon_re: c.epsilon.re,
        epsilon_im: c.epsilon.im,
        overlap: c.overlap(),
        hash: c.hash(),
    };
    emit(g.out.as_deref(), stdout, |w| match g.format.unwrap_or(Format::Json) {
        Format::Json => write_json(&report, w),
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["key", "value"])?;
            out.write_record(["source", report.source.as_str()])?;
            for (k, v) in [
                ("gamma_S", report.gamma_s),
                ("gamma_L", report.gamma_l),
                ("delta_m", report.delta_m),
                ("epsilon_re", report.epsilon_re),
                ("epsilon_im", report.epsilon_im),
                ("overlap", report.overlap),
            ] {
                out.write_record([k, f17(v).as_str()])?;
            }
            out.write_record(["hash", report.hash.as_str()])?;
            out.flush()?;
            Ok(())
        }
    })
}
