//! `skyplan`: evaluate, sweep and self-check UAV swarm deployments.

use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use skyplan_core::capacity::AnalyticOptions;
use skyplan_core::montecarlo::McOptions;
use skyplan_core::sweep::{self, CapacityMethod, Evaluation};
use skyplan_core::validation::{run_validation, ValidationOptions};
use skyplan_core::{BeamFootprint, Config, EstimateMethod, Scheme};

const THREADS_ENV: &str = "SKYPLAN_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "skyplan",
    version,
    about = "Plan mmWave UAV swarm deployments: power, coverage and capacity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single configuration.
    Eval {
        #[command(flatten)]
        model: ModelArgs,
        /// Also write the result as a one-row CSV file.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Evaluate the Cartesian product of one or more parameter axes.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        /// Axis as `key=start:step:stop` or `key=v1,v2,...`; keys are h,
        /// n_axis, n_rf, n_d, b_dac, lambda_u and scheme.
        #[arg(long = "sweep", value_name = "AXIS", required = true)]
        axes: Vec<String>,
        /// Output file; standard output if omitted.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Run the self-check suite; exits with 1 if any check fails.
    Validate {
        /// Fewer realizations and looser bands.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    /// Config file of `key = value` lines.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, default_value = "abf")]
    scheme: Scheme,
    #[arg(long, value_enum, default_value_t = Method::Analytic)]
    method: Method,
    /// UAV altitude in meters.
    #[arg(long)]
    h: Option<f64>,
    /// Elements per array axis (square array).
    #[arg(long = "n-axis")]
    n_axis: Option<u32>,
    /// RF chains (hybrid beamforming).
    #[arg(long)]
    nrf: Option<u32>,
    /// Simultaneous beams (hybrid beamforming).
    #[arg(long)]
    nd: Option<u32>,
    /// DAC resolution in bits.
    #[arg(long)]
    bdac: Option<u32>,
    /// Ground-user density per square meter.
    #[arg(long = "lambda-u")]
    lambda_u: Option<f64>,
    /// Monte Carlo seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Monte Carlo realizations.
    #[arg(long, default_value_t = 10_000)]
    realizations: u64,
    /// Skip the capacity computation.
    #[arg(long = "power-only")]
    power_only: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Analytic,
    Mc,
}

impl ModelArgs {
    fn config(&self) -> Result<Config, Failure> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))
                    .map_err(Failure::Usage)?;
                Config::from_str_checked(&text)
                    .with_context(|| format!("in {}", path.display()))
                    .map_err(Failure::Usage)?
            }
            None => Config::default(),
        };
        if let Some(h) = self.h {
            cfg.scenario.uav_altitude = h;
        }
        if let Some(n) = self.n_axis {
            cfg.antenna.n_x = n;
            cfg.antenna.n_y = n;
        }
        if let Some(n) = self.nrf {
            cfg.radio.n_rf = n;
        }
        if let Some(n) = self.nd {
            cfg.radio.n_beams = n;
        }
        if let Some(b) = self.bdac {
            cfg.radio.dac_bits = b;
        }
        if let Some(l) = self.lambda_u {
            cfg.scenario.user_density = l;
        }
        cfg.validate().map_err(core_failure)?;
        Ok(cfg)
    }

    fn capacity_method(&self) -> CapacityMethod {
        if self.power_only {
            return CapacityMethod::Skip;
        }
        match self.method {
            Method::Analytic => CapacityMethod::Analytic(AnalyticOptions::default()),
            Method::Mc => CapacityMethod::MonteCarlo(McOptions {
                realizations: self.realizations,
                seed: self.seed,
            }),
        }
    }
}

/// Exit code 2 for bad input, 1 for failed checks or computations.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
    ChecksFailed(usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) | Failure::Runtime(e) => write!(f, "{e:#}"),
            Failure::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) | Failure::ChecksFailed(_) => 1,
        }
    }
}

fn core_failure(e: skyplan_core::Error) -> Failure {
    match e {
        skyplan_core::Error::Quadrature { .. } => Failure::Runtime(e.into()),
        _ => Failure::Usage(e.into()),
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Runtime(e.into())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(anyhow!("{THREADS_ENV} must be a positive integer, found `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Runtime(e.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Eval { model, csv } => cmd_eval(&model, csv.as_deref()),
        Command::Sweep { model, axes, csv } => cmd_sweep(&model, &axes, csv.as_deref()),
        Command::Validate { quick, seed } => cmd_validate(quick, seed),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn cmd_eval(model: &ModelArgs, csv: Option<&Path>) -> Result<(), Failure> {
    let cfg = model.config()?;
    let eval = sweep::evaluate(&cfg, model.scheme, &model.capacity_method()).map_err(core_failure)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    write_report(&mut out, &eval).map_err(io_failure)?;
    if let Some(path) = csv {
        write_csv_file(path, std::slice::from_ref(&eval))?;
    }
    Ok(())
}

fn cmd_sweep(model: &ModelArgs, axes: &[String], csv: Option<&Path>) -> Result<(), Failure> {
    let cfg = model.config()?;
    let axes = axes
        .iter()
        .map(|a| sweep::parse_axis(a))
        .collect::<Result<Vec<_>, _>>()
        .map_err(core_failure)?;
    let points = sweep::expand(&cfg, model.scheme, &axes);
    let result = sweep::run_sweep(&points, &model.capacity_method());
    for (point, err) in &result.skipped {
        let c = &point.config;
        eprintln!(
            "skipped {} h={} n_axis={} n_rf={} n_d={} b_dac={} lambda_u={}: {err}",
            point.scheme,
            c.scenario.uav_altitude,
            c.antenna.n_x,
            c.radio.n_rf,
            c.radio.n_beams,
            c.radio.dac_bits,
            c.scenario.user_density
        );
    }
    match csv {
        Some(path) => {
            write_csv_file(path, &result.rows)?;
            eprintln!("wrote {} rows to {}", result.rows.len(), path.display());
        }
        None => sweep::write_csv(&result.rows, io::stdout().lock()).map_err(io_failure)?,
    }
    Ok(())
}

fn cmd_validate(quick: bool, seed: u64) -> Result<(), Failure> {
    let opts = ValidationOptions {
        quick,
        seed,
        ..ValidationOptions::default()
    };
    let report = run_validation(&opts);
    println!("{}", report.header);
    for check in &report.checks {
        println!("{check}");
    }
    let failed = report.failures().count();
    println!(
        "{} of {} checks passed",
        report.checks.len() - failed,
        report.checks.len()
    );
    if failed > 0 {
        return Err(Failure::ChecksFailed(failed));
    }
    Ok(())
}

fn write_csv_file(path: &Path, rows: &[Evaluation]) -> Result<(), Failure> {
    let file = File::create(path)
        .with_context(|| format!("creating {}", path.display()))
        .map_err(Failure::Runtime)?;
    let mut w = BufWriter::new(file);
    sweep::write_csv(rows, &mut w).map_err(io_failure)?;
    w.flush().map_err(io_failure)
}

fn write_report<W: Write>(w: &mut W, e: &Evaluation) -> io::Result<()> {
    let c = &e.config;
    let p = &e.power;
    writeln!(
        w,
        "configuration: {} {}x{} array, {} RF chain(s), {} beam(s), h = {} m, lambda_u = {} /m^2, b_DAC = {}",
        e.scheme,
        c.antenna.n_x,
        c.antenna.n_y,
        e.chains(),
        e.beams(),
        c.scenario.uav_altitude,
        c.scenario.user_density,
        c.radio.dac_bits
    )?;
    writeln!(w)?;
    writeln!(w, "beamwidths")?;
    writeln!(w, "  vertical beam        {:>12.4} deg", e.widths.theta_vb.to_degrees())?;
    writeln!(w, "  tilted beam          {:>12.4} deg", e.widths.theta_tb.to_degrees())?;
    writeln!(w, "footprints")?;
    writeln!(
        w,
        "  vertical disk        r = {:.4} m, area {:.4} m^2",
        e.footprints.r_vb(),
        e.footprints.s_vb()
    )?;
    if let BeamFootprint::Ellipse {
        semi_major,
        semi_minor,
        center_offset,
        ..
    } = e.footprints.tb
    {
        writeln!(
            w,
            "  tilted ellipse       a = {semi_major:.4} m, b = {semi_minor:.4} m, center at {center_offset:.4} m, area {:.4} m^2",
            e.footprints.s_tb()
        )?;
    }
    writeln!(w, "  coverage per UAV     {:>12.4} m^2", e.coverage)?;
    writeln!(w, "  swarm size           {:>12}", p.n_uav)?;
    writeln!(w)?;
    writeln!(w, "power per UAV")?;
    let rows = [
        ("power amplifiers", p.pa),
        ("DACs", p.dac),
        ("RF chains", p.rf_chain),
        ("phase shifters", p.phase_shifters),
        ("splitters", p.splitters),
        ("combiners", p.combiners),
        ("communication power", p.comm_total),
        ("hover power", p.hover),
        ("total", p.per_uav_total),
    ];
    for (name, watts) in rows {
        writeln!(w, "  {name:<20} {watts:>12.4} W")?;
    }
    writeln!(w, "swarm power            {:>12.4} W", p.swarm_total)?;
    writeln!(w)?;
    match &e.capacity {
        None => writeln!(w, "capacity               skipped")?,
        Some(cap) => {
            writeln!(w, "capacity               {:>12.6e} bit/s", cap.value)?;
            match cap.method {
                EstimateMethod::Analytic => writeln!(
                    w,
                    "  method               analytic, relative tolerance {:.0e} per level",
                    cap.quadrature_tolerance.unwrap_or(f64::NAN)
                )?,
                EstimateMethod::MonteCarlo => {
                    writeln!(
                        w,
                        "  method               Monte Carlo, {} realizations, seed {}",
                        cap.realizations.unwrap_or(0),
                        e.seed.unwrap_or(0)
                    )?;
                    writeln!(
                        w,
                        "  95% interval         [{:.6e}, {:.6e}] bit/s",
                        cap.ci_low, cap.ci_high
                    )?;
                }
            }
        }
    }
    if let Some(eff) = e.efficiency() {
        writeln!(w, "power efficiency       {eff:>12.6e} bit/J")?;
    }
    Ok(())
}
