// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for `lgnu-core`: config parsing, sweep dispatch,
//! CSV and SVG output.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage/config/validation error,
//! 3 numerical failure (a non-finite intermediate).

pub mod config;
pub mod csv;
pub mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lgnu_core::{
    correlation_scan, phi_envelope_scan, run_scan, run_scan_2d, validate_kossakowski, Grid,
    ScanBase, ScanMode, ScanParameter, ScanSpec,
};
use std::f64::consts::TAU;

pub use config::{parse_config, ConfigError, RunConfig};
pub use csv::{emit_csv, format_float};
pub use svg::{emit_svg, Column};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lgnu", version, about = "Leggett-Garg K3 sweeps for dissipative neutrino oscillations")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep the Majorana phase.
    ScanPhi(ScanArgs),
    /// Sweep the matter potential V_CC.
    ScanVcc(ScanArgs),
    /// Sweep the off-diagonal coefficient c12 = c21.
    ScanCoupling(ScanArgs),
    /// Sweep the time spacing tau.
    ScanTau(ScanArgs),
    /// Outer x inner sweep over two distinct parameters.
    #[command(name = "scan-2d")]
    Scan2d(ScanArgs),
    /// Sweep with per-pair correlator columns.
    Correlators(ScanArgs),
    /// Check the Kossakowski coefficients of a config.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Config file in the [section] key = value format.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. --set physics.v_cc=2 (repeatable, last wins).
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
    set: Vec<String>,
    /// CSV output path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot output path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Per-point maxima over phi, written as a separate CSV.
    #[arg(long)]
    envelope: Option<PathBuf>,
    /// Grid as start:stop:count (bounds accept a pi multiplier).
    #[arg(long)]
    grid: Option<String>,
    /// Swept parameter for correlators and scan-2d (phi, v_cc, c12, tau, energy).
    #[arg(long)]
    param: Option<String>,
    /// Outer parameter for scan-2d.
    #[arg(long)]
    outer_param: Option<String>,
    /// Outer grid for scan-2d.
    #[arg(long)]
    outer_grid: Option<String>,
    /// k3_pair or delta_k3.
    #[arg(long)]
    mode: Option<String>,
    /// Significant digits in CSV output (1..=17).
    #[arg(long)]
    precision: Option<String>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
    set: Vec<String>,
    /// Also report positive semidefiniteness of [c_ij] (advisory).
    #[arg(long)]
    psd: bool,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] lgnu_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => EXIT_CONFIG,
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Core(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Runs the CLI on `args` (program name first) using the process streams.
pub fn run_cli<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let invocation = args.iter().skip(1).cloned().collect::<Vec<_>>().join(" ");
    match dispatch(cli.command, &invocation, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_config(path: Option<&Path>, set: &[String]) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = path {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        cfg.apply(&config::parse_entries(&text)?)?;
    }
    let overrides = set.iter().map(|s| config::parse_override(s)).collect::<Result<Vec<_>, _>>()?;
    cfg.apply(&overrides)?;
    Ok(cfg)
}

fn flag_entry(key: &str, section: &str, value: &Option<String>) -> Option<config::Entry> {
    value.as_ref().map(|v| config::Entry {
        section: section.to_string(),
        key: key.to_string(),
        value: v.clone(),
        line: 0,
    })
}

fn default_grid(p: ScanParameter, cfg: &RunConfig) -> Result<Grid, CliError> {
    let g = match p {
        ScanParameter::Phi => Grid::new(0.0, TAU, 65),
        ScanParameter::VCc => Grid::new(0.1, 10.0, 200),
        ScanParameter::Tau => Grid::new(0.01, 1.0, 100),
        ScanParameter::Energy => Grid::new(0.5, 10.0, 20),
        ScanParameter::C12 => {
            let bound = 0.5 * (cfg.coefficients.get(1, 1) + cfg.coefficients.get(2, 2));
            if bound <= 0.0 {
                return Err(CliError::Usage(
                    "c12 sweep needs c11 + c22 > 0 or an explicit --grid".into(),
                ));
            }
            Grid::new(0.0, bound, 11)
        }
    };
    Ok(g?)
}

struct Prepared {
    cfg: RunConfig,
    args: ScanArgs,
}

fn prepare(args: ScanArgs) -> Result<Prepared, CliError> {
    let mut cfg = load_config(args.config.as_deref(), &args.set)?;
    let flags: Vec<config::Entry> = [
        flag_entry("mode", "scan", &args.mode),
        flag_entry("precision", "output", &args.precision),
        flag_entry("outer_parameter", "scan", &args.outer_param),
        flag_entry("outer_grid", "scan", &args.outer_grid),
    ]
    .into_iter()
    .flatten()
    .collect();
    cfg.apply(&flags)?;
    if let Some(p) = &args.out {
        cfg.output.csv = Some(p.clone());
    }
    if let Some(p) = &args.svg {
        cfg.output.svg = Some(p.clone());
    }
    if let Some(p) = &args.envelope {
        cfg.output.envelope = Some(p.clone());
    }
    cfg.validate()?;
    Ok(Prepared { cfg, args })
}

fn parse_param(s: &str) -> Result<ScanParameter, CliError> {
    Ok(s.parse::<ScanParameter>()?)
}

/// Settles the swept parameter and grid and records them in the config so
/// the metadata echo reproduces the run.
fn resolve_inner(pre: &mut Prepared, fixed: Option<ScanParameter>) -> Result<ScanSpec, CliError> {
    let cfg = &mut pre.cfg;
    let parameter = match fixed {
        Some(p) => p,
        None => match &pre.args.param {
            Some(s) => parse_param(s)?,
            None => cfg.scan.parameter.unwrap_or(ScanParameter::VCc),
        },
    };
    let grid = match &pre.args.grid {
        Some(s) => config::parse_grid(s).map_err(|m| CliError::Usage(format!("--grid: {m}")))?,
        None => match (cfg.scan.parameter, cfg.scan.grid) {
            (Some(p), Some(g)) if p == parameter => g,
            (None, Some(g)) => g,
            _ => default_grid(parameter, cfg)?,
        },
    };
    cfg.scan.parameter = Some(parameter);
    cfg.scan.grid = Some(grid);
    Ok(ScanSpec { parameter, grid, base: base_of(cfg), mode: cfg.scan.mode })
}

fn base_of(cfg: &RunConfig) -> ScanBase {
    ScanBase { params: cfg.params, coefficients: cfg.coefficients, tau: cfg.tau }
}

fn metadata(cfg: &RunConfig, subcommand: &str, invocation: &str) -> Vec<String> {
    let mut meta = vec![format!("command: lgnu {invocation}"), format!("subcommand: {subcommand}")];
    meta.push("effective config (strip '# | ' to reuse):".to_string());
    meta.extend(cfg.to_config_string().lines().map(|l| format!("| {l}")));
    meta
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit_table(cfg: &RunConfig, csv_text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &cfg.output.csv {
        Some(path) => write_atomic(path, csv_text),
        None => out
            .write_all(csv_text.as_bytes())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

fn mode_columns(mode: ScanMode) -> Vec<Column> {
    match mode {
        ScanMode::DeltaK3 => vec![Column::DeltaK3],
        ScanMode::K3Pair => vec![Column::K3Dirac, Column::K3Majorana],
    }
}

fn dispatch(command: Command, invocation: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let (args, fixed, name) = match command {
        Command::Validate(v) => return validate(v, out),
        Command::ScanPhi(a) => (a, Some(ScanParameter::Phi), "scan-phi"),
        Command::ScanVcc(a) => (a, Some(ScanParameter::VCc), "scan-vcc"),
        Command::ScanCoupling(a) => (a, Some(ScanParameter::C12), "scan-coupling"),
        Command::ScanTau(a) => (a, Some(ScanParameter::Tau), "scan-tau"),
        Command::Scan2d(a) => return scan_2d(a, invocation, out),
        Command::Correlators(a) => return correlators(a, invocation, out),
    };
    let mut pre = prepare(args)?;
    let spec = resolve_inner(&mut pre, fixed)?;
    let cfg = &pre.cfg;
    let meta = metadata(cfg, name, invocation);
    let result = run_scan(&spec)?;
    let digits = cfg.output.precision;

    if let Some(path) = &cfg.output.envelope {
        if spec.parameter == ScanParameter::Phi {
            return Err(CliError::Usage("--envelope maximises over phi; not available for scan-phi".into()));
        }
        let env = phi_envelope_scan(&spec, cfg.scan.phi_points)?;
        write_atomic(path, &csv::emit_envelope_csv(&env, digits, &meta))?;
    }
    if let Some(path) = &cfg.output.svg {
        write_atomic(path, &svg::emit_svg(&result, &mode_columns(spec.mode))?)?;
    }
    emit_table(cfg, &csv::emit_csv_with_meta(&result, digits, &meta), out)
}

fn scan_2d(args: ScanArgs, invocation: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let mut pre = prepare(args)?;
    let inner = resolve_inner(&mut pre, None)?;
    let cfg = &mut pre.cfg;
    let outer_param = cfg.scan.outer_parameter.unwrap_or(ScanParameter::Phi);
    let outer_grid = match cfg.scan.outer_grid {
        Some(g) => g,
        None if outer_param == ScanParameter::Phi => Grid::new(0.0, TAU, 9)?,
        None => default_grid(outer_param, cfg)?,
    };
    cfg.scan.outer_parameter = Some(outer_param);
    cfg.scan.outer_grid = Some(outer_grid);
    let outer = ScanSpec { parameter: outer_param, grid: outer_grid, ..inner };
    let results = run_scan_2d(&outer, &inner)?;
    let meta = metadata(cfg, "scan-2d", invocation);
    if let Some(path) = &cfg.output.svg {
        let column = match inner.mode {
            ScanMode::DeltaK3 => Column::DeltaK3,
            ScanMode::K3Pair => Column::K3Majorana,
        };
        write_atomic(path, &svg::emit_svg_family(&results, column)?)?;
    }
    emit_table(cfg, &csv::emit_scan_2d_csv(&results, cfg.output.precision, &meta), out)
}

fn correlators(args: ScanArgs, invocation: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let mut pre = prepare(args)?;
    let spec = resolve_inner(&mut pre, None)?;
    let cfg = &pre.cfg;
    let result = correlation_scan(&spec)?;
    let meta = metadata(cfg, "correlators", invocation);
    if let Some(path) = &cfg.output.svg {
        write_atomic(path, &svg::emit_correlation_svg(&result)?)?;
    }
    emit_table(cfg, &csv::emit_correlation_csv(&result, cfg.output.precision, &meta), out)
}

fn validate(args: ValidateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load_config(args.config.as_deref(), &args.set)?;
    cfg.validate_physics()?;
    let report = validate_kossakowski(&cfg.coefficients)?;
    let io = |source| CliError::Io { path: PathBuf::from("<stdout>"), source };
    writeln!(out, "Kossakowski: {report}").map_err(io)?;
    if args.psd {
        let verdict = if cfg.coefficients.is_positive_semidefinite(1e-15) { "yes" } else { "no" };
        writeln!(out, "PSD: {verdict} (advisory)").map_err(io)?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(ConfigError::Validation { field: "kossakowski".into(), message: report.to_string() }.into())
    }
}
