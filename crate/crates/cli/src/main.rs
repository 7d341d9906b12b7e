#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod output;

use config::{CommandKind, RunConfig, Settings};
use error::{CliError, Result};

/// Growth indicators, zero sets, Mellin checks and potential sweeps for
/// subharmonic functions with masses on a ray.
#[derive(Debug, Parser)]
#[command(name = "subharm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Dimension n >= 3
    #[arg(long, global = true)]
    n: Option<String>,
    /// Order ρ
    #[arg(long, global = true)]
    rho: Option<String>,
    /// Density constant Δ
    #[arg(long, global = true)]
    delta: Option<String>,
    /// Comma-separated angles with unit suffix, e.g. 0deg,130deg,1.2rad
    #[arg(long, global = true)]
    theta: Option<String>,
    /// Geometric radius grid start:end:points
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Tolerance of the command's cross-check
    #[arg(long, global = true)]
    tol: Option<String>,
    /// csv or json
    #[arg(long, global = true)]
    format: Option<String>,
    /// Output file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value file; flags given on the command line take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized rows
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Relative tolerance of the quadratures
    #[arg(long, global = true)]
    rel_tol: Option<String>,
    /// Absolute tolerance of the quadratures
    #[arg(long, global = true)]
    abs_tol: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Indicator H(θ₁): closed form, integral form and near-π asymptotic
    Indicator,
    /// Exceptional angles where the indicator vanishes
    Zeros,
    /// Mellin transform of the subtracted kernel: quadrature vs closed form
    MellinVerify {
        /// Extra random rows drawn from --seed
        #[arg(long)]
        random: Option<String>,
    },
    /// Potential of a mass model and its scaled limits
    Simulate {
        /// Mass model file
        #[arg(long)]
        model: Option<PathBuf>,
        /// Evaluate u at these radii instead of sweeping the grid
        #[arg(long)]
        radii: Option<String>,
        /// aitken or inverselog
        #[arg(long)]
        extrapolation: Option<String>,
    },
    /// Order ρ from the density of a positive-axis mass
    SolveOrder {
        /// Right side Δ̄ of the order equation
        #[arg(long)]
        target: Option<String>,
    },
    /// Oscillating potential whose mass is regular but whose indicator is not
    Counterexample {
        /// Samples of t in r = exp(exp t), t ∈ [0, 2π]
        #[arg(long)]
        points: Option<String>,
    },
}

impl Cli {
    fn settings(&self) -> (CommandKind, Settings) {
        let mut s = Settings::default();
        let c = &self.common;
        let flags = [
            ("n", &c.n),
            ("rho", &c.rho),
            ("delta", &c.delta),
            ("theta", &c.theta),
            ("grid", &c.grid),
            ("tol", &c.tol),
            ("format", &c.format),
            ("seed", &c.seed),
            ("rel_tol", &c.rel_tol),
            ("abs_tol", &c.abs_tol),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                s.set(k, v.as_str());
            }
        }
        let kind = match &self.command {
            Command::Indicator => CommandKind::Indicator,
            Command::Zeros => CommandKind::Zeros,
            Command::MellinVerify { random } => {
                if let Some(v) = random {
                    s.set("random", v.as_str());
                }
                CommandKind::MellinVerify
            }
            Command::Simulate { model, radii, extrapolation } => {
                if let Some(m) = model {
                    s.set("model", m.display().to_string());
                }
                if let Some(v) = radii {
                    s.set("radii", v.as_str());
                }
                if let Some(v) = extrapolation {
                    s.set("extrapolation", v.as_str());
                }
                CommandKind::Simulate
            }
            Command::SolveOrder { target } => {
                if let Some(v) = target {
                    s.set("target", v.as_str());
                }
                CommandKind::SolveOrder
            }
            Command::Counterexample { points } => {
                if let Some(v) = points {
                    s.set("points", v.as_str());
                }
                CommandKind::Counterexample
            }
        };
        (kind, s)
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let (kind, flags) = cli.settings();
    let file = match &cli.common.config {
        Some(path) => fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?
            .parse()?,
        None => Settings::default(),
    };
    let config = RunConfig::resolve(kind, &file.merge(flags))?;
    let report = commands::run(&config)?;
    let text = output::render(&config, &report.tables);
    match &cli.common.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "stdout".into(), source })?,
    }
    match report.failure {
        Some(reason) => Err(CliError::Tolerance(reason)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(4);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
