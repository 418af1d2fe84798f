use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use triopo::config::{fmt_sig, CliError, OutputKind, ParamSpec, SweepConfig};
use triopo::{oracle, point, sweep};
use triopo_core::SimConfig;

/// Three-mode quantum noise of the triply resonant OPO above threshold:
/// spectral covariance matrices, entanglement witnesses and logarithmic
/// negativities over (sigma, omega) grids.
#[derive(Parser)]
#[command(name = "triopo", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the (sigma, omega) grid and emit a plot-ready table.
    Sweep(SweepArgs),
    /// Full report (matrix, witnesses, negativities) at a single point.
    Point(PointArgs),
    /// Monte Carlo cross-check of the analytic spectra.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct ParamFlags {
    /// Pump coupling-mirror intensity transmittance.
    #[arg(long)]
    t0: Option<f64>,
    /// Signal/idler coupling-mirror intensity transmittance.
    #[arg(long)]
    t: Option<f64>,
    /// Pump spurious intracavity intensity loss.
    #[arg(long)]
    mu0: Option<f64>,
    /// Signal/idler spurious intracavity intensity loss.
    #[arg(long)]
    mu: Option<f64>,
    /// Nonlinear coupling constant (fluctuations do not depend on it).
    #[arg(long)]
    chi: Option<f64>,
}

impl ParamFlags {
    fn apply(&self, spec: &mut ParamSpec) {
        if let Some(v) = self.t0 {
            spec.t0 = v;
        }
        if let Some(v) = self.t {
            spec.t = v;
        }
        if let Some(v) = self.mu0 {
            spec.mu0 = v;
        }
        if let Some(v) = self.mu {
            spec.mu = v;
        }
        if let Some(v) = self.chi {
            spec.chi = v;
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,

    #[command(flatten)]
    params: ParamFlags,

    #[arg(long)]
    sigma_min: Option<f64>,
    #[arg(long)]
    sigma_max: Option<f64>,
    #[arg(long)]
    sigma_steps: Option<usize>,
    #[arg(long)]
    omega_min: Option<f64>,
    #[arg(long)]
    omega_max: Option<f64>,
    #[arg(long)]
    omega_steps: Option<usize>,
    /// Geometric omega spacing.
    #[arg(long)]
    log_omega: bool,

    /// Comma-separated selection among witnesses,negativity,spectra,oracle.
    #[arg(long)]
    outputs: Option<String>,

    /// Seed for the oracle output family.
    #[arg(long)]
    seed: Option<u64>,

    /// Output path; "-" for stdout.
    #[arg(long, default_value = "-")]
    out: String,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    params: ParamFlags,

    /// Pump power relative to threshold.
    #[arg(long, default_value_t = 1.5)]
    sigma: f64,

    /// Analysis frequency in units of 1/tau.
    #[arg(long)]
    omega: f64,

    /// Output path; "-" for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    params: ParamFlags,

    #[arg(long, default_value_t = 1.5)]
    sigma: f64,

    /// Comma-separated analysis frequencies.
    #[arg(long, default_value = "0.01,0.02,0.05,0.1")]
    omegas: String,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Integration step in round-trip units.
    #[arg(long, default_value_t = 0.1)]
    dt: f64,

    /// Total integration steps including burn-in.
    #[arg(long, default_value_t = 30_720 * 81)]
    steps: usize,

    #[arg(long, default_value_t = 30_720)]
    burn_in: usize,

    /// Welch averaging segments.
    #[arg(long, default_value_t = 80)]
    segments: usize,

    /// Negative-control hook: scale the parametric coupling of the
    /// simulated drift so the comparison must fail.
    #[arg(long)]
    corrupt_drift: Option<f64>,

    /// Output path; "-" for stdout.
    #[arg(long, default_value = "-")]
    out: String,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn open_out(path: &str) -> io::Result<Box<dyn Write>> {
    if path == "-" {
        Ok(Box::new(BufWriter::new(io::stdout())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Config(format!("io error: {e}"))
}

fn run_sweep_cmd(args: &SweepArgs) -> Result<(), CliError> {
    let mut cfg = match &args.config {
        Some(path) => SweepConfig::from_json_file(path)?,
        None => SweepConfig::default(),
    };
    args.params.apply(&mut cfg.params);
    if let Some(v) = args.sigma_min {
        cfg.sigma_grid.min = v;
    }
    if let Some(v) = args.sigma_max {
        cfg.sigma_grid.max = v;
    }
    if let Some(v) = args.sigma_steps {
        cfg.sigma_grid.steps = v;
    }
    if let Some(v) = args.omega_min {
        cfg.omega_grid.min = v;
    }
    if let Some(v) = args.omega_max {
        cfg.omega_grid.max = v;
    }
    if let Some(v) = args.omega_steps {
        cfg.omega_grid.steps = v;
    }
    if args.log_omega {
        cfg.omega_grid.log = true;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(sel) = &args.outputs {
        let mut outputs = Vec::new();
        for part in sel.split(',').filter(|p| !p.trim().is_empty()) {
            let kind = OutputKind::parse(part)?;
            if !outputs.contains(&kind) {
                outputs.push(kind);
            }
        }
        cfg.outputs = outputs;
    }
    if cfg.selected(OutputKind::Oracle) && args.out == "-" {
        return Err(CliError::Config(
            "the oracle output family writes a sidecar file: give --out a path".into(),
        ));
    }

    let table = sweep::run_sweep(&cfg)?;
    {
        let mut out = open_out(&args.out).map_err(io_err)?;
        match args.format {
            Format::Csv => sweep::write_csv(&table, &mut out).map_err(io_err)?,
            Format::Json => sweep::write_json(&table, &mut out).map_err(io_err)?,
        }
        out.flush().map_err(io_err)?;
    }

    if cfg.selected(OutputKind::Oracle) {
        let sim = SimConfig::<f64>::default();
        let sim = SimConfig { seed: cfg.seed, ..sim };
        let report = oracle::run_oracle_check(
            &cfg.params,
            1.5f64.clamp(cfg.sigma_grid.min, cfg.sigma_grid.max),
            &sim,
            &[0.01, 0.02, 0.05, 0.1],
            None,
        )?;
        let ext = match args.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let side = format!("{}.oracle.{ext}", args.out.trim_end_matches(".csv").trim_end_matches(".json"));
        let mut out = open_out(&side).map_err(io_err)?;
        match args.format {
            Format::Csv => oracle::write_csv(&report, &mut out).map_err(io_err)?,
            Format::Json => oracle::write_json(&report, &mut out).map_err(io_err)?,
        }
        out.flush().map_err(io_err)?;
        eprintln!(
            "oracle: {} comparisons, max |z| = {:.2}, wrote {side}",
            report.rows.len(),
            report.max_abs_z
        );
        if !report.pass() {
            return Err(CliError::OracleMismatch {
                fraction: report.fraction_exceeding,
            });
        }
    }

    let failed = table.failed_rows();
    if failed > 0 {
        eprintln!("{failed} of {} grid points failed; see the status column", table.rows.len());
        return Err(CliError::Numeric(format!("{failed} grid points failed")));
    }
    Ok(())
}

fn run_point_cmd(args: &PointArgs) -> Result<(), CliError> {
    let mut spec = ParamSpec::default();
    args.params.apply(&mut spec);
    let report = point::run_point(&spec, args.sigma, args.omega)?;
    let mut out = open_out(&args.out).map_err(io_err)?;
    serde_json::to_writer_pretty(&mut out, &report)
        .map_err(|e| CliError::Config(format!("serialization: {e}")))?;
    writeln!(out).map_err(io_err)?;
    out.flush().map_err(io_err)?;
    Ok(())
}

fn run_oracle_cmd(args: &OracleArgs) -> Result<(), CliError> {
    let mut spec = ParamSpec::default();
    args.params.apply(&mut spec);
    let mut omegas = Vec::new();
    for part in args.omegas.split(',').filter(|p| !p.trim().is_empty()) {
        let w: f64 = part
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad frequency {part:?}")))?;
        omegas.push(w);
    }
    let sim = SimConfig::new(args.dt, args.steps, args.burn_in, args.seed, args.segments)
        .map_err(CliError::from)?;
    let report = oracle::run_oracle_check(&spec, args.sigma, &sim, &omegas, args.corrupt_drift)?;

    let mut out = open_out(&args.out).map_err(io_err)?;
    match args.format {
        Format::Csv => oracle::write_csv(&report, &mut out).map_err(io_err)?,
        Format::Json => oracle::write_json(&report, &mut out).map_err(io_err)?,
    }
    out.flush().map_err(io_err)?;
    drop(out);

    eprintln!(
        "oracle: {} comparisons, max |z| = {}, fraction over 3 = {}",
        report.rows.len(),
        fmt_sig(report.max_abs_z),
        fmt_sig(report.fraction_exceeding)
    );
    if !report.pass() {
        return Err(CliError::OracleMismatch {
            fraction: report.fraction_exceeding,
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = triopo::configure_threads_from_env() {
        eprintln!("{e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    let result = match &cli.command {
        Command::Sweep(args) => run_sweep_cmd(args),
        Command::Point(args) => run_point_cmd(args),
        Command::Oracle(args) => run_oracle_cmd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
