//! Command-line front end for the zetalab numerics.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 a numerical check failed.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

use std::ffi::OsString;
use std::f64::consts::E;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use zetalab::bounds::{check_341, growth_scan, inverse_zeta_scan, nonvanishing_scan, pnt_ratio_table, scan_341};
use zetalab::contour::{kernel_integral, reconstruct_psi1, HLine};
use zetalab::dirichlet::{log_derivative_coeffs, CoeffTable};
use zetalab::zeta::{default_cutoff, zeta_em, zeta_prime_em, zeta_with_tolerance};
use zetalab::{ArithTable, ComplexPoint, GridSpec, LineQuadSpec, ScanReport};

pub mod checks;
pub mod config;
pub mod emit;
pub mod manifest;

use config::{parse_count, OutputFormat, RunConfig};
use emit::{csv_text, json_text, Emitter};
use manifest::{checksums, RunManifest, Versions};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] zetalab::Error),
    #[error("i/o: {0}")]
    Io(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "zetalab", version, about = "Numerical checks for the analytic proof of the prime number theorem")]
pub struct Cli {
    /// key = value file applied before flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads [default: 1]
    #[arg(long, global = true, env = "ZETALAB_THREADS")]
    pub threads: Option<usize>,
    /// Output directory [default: zetalab-out]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Override each command's native output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Sieve limit for commands needing an arithmetic table [default: 1e6]
    #[arg(long, global = true)]
    pub sieve_limit: Option<String>,
    /// Relative zeta truncation tolerance [default: 1e-10]
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Adaptive quadrature tolerance [default: 1e-10]
    #[arg(long, global = true)]
    pub quad_tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sieve table of n, Λ(n), μ(n), λ(n), is_prime
    Table {
        #[arg(long)]
        limit: String,
        #[arg(long, value_enum)]
        emit: Option<OutputFormat>,
    },
    /// ζ(s) (or ζ′(s)) with its error bound
    Zeta(ZetaArgs),
    /// Dirichlet-series identities
    Dirichlet {
        #[command(subcommand)]
        which: DirichletCommand,
    },
    /// Line integral of x^s/(s(s+1)…(s+k)) against its closed form
    Kernel(KernelArgs),
    /// ψ₁(x)/x² from the line integral of h(s)x^{s−1}
    Reconstruct(ReconstructArgs),
    /// Grid scans of the zero-free-region inequalities
    Scan {
        #[command(subcommand)]
        which: ScanCommand,
    },
    /// ψ(x)/x, 2ψ₁(x)/x², ϑ(x)/(π(x) log x) at the given x
    PntTable {
        #[arg(long, value_delimiter = ',', default_value = "1e3,1e4,1e5,1e6")]
        limits: Vec<String>,
    },
    /// Run every named check
    Certify {
        /// Reduced sizes
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ZetaArgs {
    #[arg(long)]
    pub sigma: f64,
    #[arg(long)]
    pub t: f64,
    /// Main-sum cutoff; automatic when omitted
    #[arg(long)]
    pub n: Option<u64>,
    /// Extra Euler–Maclaurin intervals before the Bernoulli tail
    #[arg(long)]
    pub extra: Option<u64>,
    /// Evaluate ζ′ instead of ζ
    #[arg(long)]
    pub derivative: bool,
}

#[derive(Debug, Subcommand)]
pub enum DirichletCommand {
    /// max |(log ∗ μ)(n) − Λ(n)| for n ≤ limit
    LambdaIdentity {
        #[arg(long, default_value = "10000")]
        limit: String,
    },
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub u: f64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 2.0)]
    pub c: f64,
    #[arg(long = "T", default_value_t = 1e4)]
    pub t_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub dt: f64,
    #[arg(long)]
    pub adaptive: bool,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    #[arg(long)]
    pub x: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long = "T")]
    pub t_max: f64,
    /// Step; defaults to min(0.25, π/(4 log x))
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub adaptive: bool,
    /// Also write (t, Re h, Im h) samples as CSV
    #[arg(long)]
    pub dump_integrand: bool,
}

#[derive(Debug, Subcommand)]
pub enum ScanCommand {
    /// min ζ³(σ)|ζ(σ+it)|⁴|ζ(σ+2it)| over a grid with σ > 1
    #[command(name = "341")]
    ThreeFourOne {
        #[arg(long, default_value_t = 1.01)]
        sigma_min: f64,
        #[arg(long, default_value_t = 2.0)]
        sigma_max: f64,
        #[arg(long, default_value_t = E)]
        t_min: f64,
        #[arg(long, default_value_t = 50.0)]
        t_max: f64,
        #[arg(long, default_value_t = 200)]
        n_sigma: usize,
        #[arg(long, default_value_t = 200)]
        n_t: usize,
    },
    /// min |ζ(1+it)| over log-spaced t
    Nonvanish {
        #[arg(long, default_value_t = E)]
        t_min: f64,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
    /// sup |ζ|/log t and sup |ζ′|/log² t in σ ≥ max(1/2, 1 − A/log t)
    Growth {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1000.0)]
        t_max: f64,
        #[arg(long, default_value_t = 8)]
        n_sigma: usize,
        #[arg(long, default_value_t = 200)]
        n_t: usize,
    },
    /// sup |1/ζ|/(log t)⁷ and sup |ζ′/ζ|/(log t)⁹ on σ ∈ {1, 1.25, 1.5, 2}
    Inverse {
        #[arg(long, default_value_t = 1000.0)]
        t_max: f64,
        #[arg(long, default_value_t = 4000)]
        n: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Table { .. } => "table",
            Command::Zeta(_) => "zeta",
            Command::Dirichlet { .. } => "dirichlet",
            Command::Kernel(_) => "kernel",
            Command::Reconstruct(_) => "reconstruct",
            Command::Scan { .. } => "scan",
            Command::PntTable { .. } => "pnt-table",
            Command::Certify { .. } => "certify",
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command_line = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli, command_line) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("zetalab: {e}");
            e.exit_code()
        }
    }
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(p) = &cli.config {
        cfg.apply_file(p)?;
    }
    if let Some(n) = cli.threads {
        cfg.threads = n;
    }
    if let Some(p) = &cli.out {
        cfg.output_path = p.clone();
    }
    if let Some(f) = cli.format {
        cfg.output_format = Some(f);
    }
    if let Some(s) = &cli.sieve_limit {
        cfg.sieve_limit = count(s, "sieve-limit")?;
    }
    if let Some(t) = cli.tolerance {
        cfg.zeta_tolerance = t;
    }
    if let Some(t) = cli.quad_tolerance {
        cfg.quad_tolerance = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn count(s: &str, what: &str) -> Result<u64, CliError> {
    parse_count(s).ok_or_else(|| CliError::Usage(format!("--{what}: expected a nonnegative integer, got '{s}'")))
}

fn execute(cli: Cli, command_line: Vec<String>) -> Result<(), CliError> {
    let start = Instant::now();
    let cfg = resolve_config(&cli)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let mut out = Emitter::new(&cfg.output_path)?;
    let name = cli.command.name();
    let result = pool.install(|| dispatch(&cli.command, &cfg, &mut out));
    // the manifest is written even when a check fails, so the run can be replayed
    if !matches!(result, Err(CliError::Usage(_)) | Err(CliError::Domain(_)) | Err(CliError::Io(_))) {
        let manifest = RunManifest {
            command_line,
            config: cfg.clone(),
            versions: Versions::current(),
            wall_time_seconds: start.elapsed().as_secs_f64(),
            checksums: checksums(out.written())?,
        };
        let text = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Io(e.to_string()))? + "\n";
        out.write(&format!("manifest-{name}.json"), &text)?;
    }
    result
}

/// Writes `report` in the effective format and echoes it to stdout.
fn emit_one<T: Serialize>(
    out: &mut Emitter,
    cfg: &RunConfig,
    stem: &str,
    native: OutputFormat,
    report: &T,
) -> Result<(), CliError> {
    emit_rows(out, cfg, stem, native, std::slice::from_ref(report), false)
}

fn emit_rows<T: Serialize>(
    out: &mut Emitter,
    cfg: &RunConfig,
    stem: &str,
    native: OutputFormat,
    rows: &[T],
    quiet: bool,
) -> Result<(), CliError> {
    let fmt = cfg.output_format.unwrap_or(native);
    let (text, ext) = match fmt {
        OutputFormat::Csv => (csv_text(rows)?, "csv"),
        OutputFormat::Json if rows.len() == 1 => (json_text(&rows[0])?, "json"),
        OutputFormat::Json => (json_text(&rows)?, "json"),
    };
    let path = out.write(&format!("{stem}.{ext}"), &text)?;
    if quiet {
        println!("wrote {}", path.display());
    } else {
        print!("{text}");
    }
    Ok(())
}

fn table_for(limit: u64, cfg: &RunConfig) -> Result<ArithTable, CliError> {
    if limit > cfg.sieve_limit {
        return Err(CliError::Usage(format!(
            "need a sieve up to {limit}, above the configured sieve_limit {}",
            cfg.sieve_limit
        )));
    }
    Ok(ArithTable::build(limit.max(2))?)
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    mangoldt: f64,
    mobius: i8,
    liouville: i8,
    is_prime: bool,
}

fn dispatch(cmd: &Command, cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    match cmd {
        Command::Table { limit, emit } => {
            let limit = count(limit, "limit")?;
            if limit < 1 {
                return Err(CliError::Usage("--limit must be at least 1".into()));
            }
            let table = table_for(limit, cfg)?;
            let rows: Vec<TableRow> = (1..=limit)
                .map(|n| TableRow {
                    n,
                    mangoldt: table.mangoldt()[n as usize],
                    mobius: table.mobius()[n as usize],
                    liouville: table.liouville()[n as usize],
                    is_prime: table.is_prime(n),
                })
                .collect();
            let native = emit.unwrap_or(OutputFormat::Csv);
            let cfg = RunConfig { output_format: emit.or(cfg.output_format), ..cfg.clone() };
            emit_rows(out, &cfg, "table", native, &rows, true)
        }
        Command::Zeta(a) => zeta_cmd(a, cfg, out),
        Command::Dirichlet { which: DirichletCommand::LambdaIdentity { limit } } => {
            let n = count(limit, "limit")? as usize;
            if n < 1 {
                return Err(CliError::Usage("--limit must be at least 1".into()));
            }
            let table = table_for(n as u64, cfg)?;
            let lam = log_derivative_coeffs(&CoeffTable::ones(n)?)?;
            let dev = lam.max_abs_diff(&CoeffTable::mangoldt(&table, n)?)?;
            let report = json!({ "limit": n, "max_abs_deviation": dev, "tolerance": 1e-9 });
            emit_one(out, cfg, "lambda-identity", OutputFormat::Json, &report)?;
            if dev > 1e-9 {
                return Err(CliError::CheckFailed(format!("Lambda identity deviation {dev} exceeds 1e-9")));
            }
            Ok(())
        }
        Command::Kernel(a) => {
            let spec = LineQuadSpec { adaptive: a.adaptive, tol: cfg.quad_tolerance, ..LineQuadSpec::new(a.c, a.t_max, a.dt) };
            let r = kernel_integral(a.u, a.k, &spec)?;
            emit_one(out, cfg, "kernel", OutputFormat::Json, &r)?;
            let tol = if a.k == 1 { 1e-2 } else { 1e-4 };
            if !(r.deviation.unwrap_or(f64::INFINITY) <= f64::max(tol, r.truncation_tail_bound)) {
                return Err(CliError::CheckFailed(format!("kernel deviation {:?} exceeds tolerance", r.deviation)));
            }
            Ok(())
        }
        Command::Reconstruct(a) => reconstruct_cmd(a, cfg, out),
        Command::Scan { which } => scan_cmd(which, out, cfg),
        Command::PntTable { limits } => {
            let xs = limits
                .iter()
                .map(|s| s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("--limits: bad value '{s}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            let top = xs.iter().cloned().fold(2.0, f64::max);
            let table = table_for(top.floor() as u64, cfg)?;
            let t = pnt_ratio_table(&table, &xs)?;
            emit_rows(out, cfg, "pnt-table", OutputFormat::Csv, &t.rows, false)?;
            if !t.trend_toward_one {
                return Err(CliError::CheckFailed("ratio columns do not trend toward 1".into()));
            }
            Ok(())
        }
        Command::Certify { quick } => {
            let scale = if *quick { checks::Scale::Quick } else { checks::Scale::Full };
            let outcomes = checks::run_all(scale)?;
            let mut txt = String::new();
            for o in &outcomes {
                txt.push_str(&o.line());
                txt.push('\n');
            }
            out.write("certify.json", &json_text(&outcomes)?)?;
            out.write("certify.txt", &txt)?;
            print!("{txt}");
            let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
            if !failed.is_empty() {
                return Err(CliError::CheckFailed(failed.join(", ")));
            }
            Ok(())
        }
    }
}

fn zeta_cmd(a: &ZetaArgs, cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    let s = ComplexPoint::new(a.sigma, a.t);
    let r = match (a.n, a.extra, a.derivative) {
        (None, None, false) => zeta_with_tolerance(s, cfg.zeta_tolerance)?,
        (n, extra, deriv) => {
            let n = n.unwrap_or_else(|| default_cutoff(s));
            let extra = extra.unwrap_or(0);
            if deriv {
                zeta_prime_em(s, n, extra)?
            } else {
                zeta_em(s, n, extra)?
            }
        }
    };
    let report = json!({
        "s": s,
        "function": if a.derivative { "zeta_prime" } else { "zeta" },
        "value": { "re": r.value.re, "im": r.value.im },
        "err_bound": r.err_bound,
        "n_cutoff": r.n_cutoff,
        "extra_terms": r.extra_terms,
    });
    emit_one(out, cfg, "zeta", OutputFormat::Json, &report)
}

fn reconstruct_cmd(a: &ReconstructArgs, cfg: &RunConfig, out: &mut Emitter) -> Result<(), CliError> {
    let dt = a.dt.unwrap_or_else(|| LineQuadSpec::reconstruct_step(a.x));
    let table = table_for(a.x.max(2.0).floor() as u64, cfg)?;
    let spec = LineQuadSpec { adaptive: a.adaptive, tol: cfg.quad_tolerance, ..LineQuadSpec::new(a.c, a.t_max, dt) };
    let r = reconstruct_psi1(a.x, &spec, &table)?;
    emit_one(out, cfg, "reconstruct", OutputFormat::Json, &r)?;
    if a.dump_integrand {
        let line = HLine::sample(a.c, a.t_max, a.t_max, dt)?;
        let mut text = String::from("t,re_h,im_h\n");
        for (t, h) in line.samples() {
            text.push_str(&format!("{},{},{}\n", emit::fmt_g15(t), emit::fmt_g15(h.re), emit::fmt_g15(h.im)));
        }
        out.write("integrand.csv", &text)?;
    }
    if !r.within(0.02) {
        return Err(CliError::CheckFailed(format!(
            "reconstruction deviation {:?} exceeds 2% of {:?} and the tail bound {}",
            r.deviation, r.reference, r.truncation_tail_bound
        )));
    }
    Ok(())
}

fn scan_cmd(which: &ScanCommand, out: &mut Emitter, cfg: &RunConfig) -> Result<(), CliError> {
    match *which {
        ScanCommand::ThreeFourOne { sigma_min, sigma_max, t_min, t_max, n_sigma, n_t } => {
            let r = scan_341(GridSpec::new(sigma_min, sigma_max, t_min, t_max, n_sigma, n_t))?;
            emit_one(out, cfg, "scan-341", OutputFormat::Json, &r)?;
            if !check_341(&r) {
                return Err(CliError::CheckFailed(format!("3-4-1 product reaches {} < 1", r.extremum)));
            }
        }
        ScanCommand::Nonvanish { t_min, t_max, n } => {
            let r = nonvanishing_scan(t_min, t_max, n)?;
            emit_one(out, cfg, "scan-nonvanish", OutputFormat::Json, &r)?;
            if !(r.extremum > r.extremum_err) {
                return Err(CliError::CheckFailed(format!("|zeta(1+it)| not certified positive: {}", r.extremum)));
            }
        }
        ScanCommand::Growth { a, t_max, n_sigma, n_t } => {
            let floor = 0.5f64.max(1.0 - a / t_max.ln());
            let (z, dz) = growth_scan(a, t_max, GridSpec::new(floor, 2.0, E, t_max, n_sigma, n_t))?;
            emit_pair(out, cfg, "scan-growth", ("zeta", &z), ("zeta_prime", &dz))?;
        }
        ScanCommand::Inverse { t_max, n } => {
            let (inv, ld) = inverse_zeta_scan(t_max, n)?;
            emit_pair(out, cfg, "scan-inverse", ("inverse_zeta", &inv), ("log_derivative", &ld))?;
        }
    }
    Ok(())
}

fn emit_pair(
    out: &mut Emitter,
    cfg: &RunConfig,
    stem: &str,
    a: (&str, &ScanReport),
    b: (&str, &ScanReport),
) -> Result<(), CliError> {
    for (name, r) in [a, b] {
        emit_one(out, cfg, &format!("{stem}-{name}"), OutputFormat::Json, r)?;
    }
    for (name, r) in [a, b] {
        if !(r.empirical_constant.is_finite() && r.empirical_constant > 0.0) {
            return Err(CliError::CheckFailed(format!("{name} constant is not finite: {}", r.empirical_constant)));
        }
    }
    Ok(())
}
