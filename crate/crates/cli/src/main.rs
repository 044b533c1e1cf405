mod commands;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::Format;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

/// Equilibria and bifurcations of the rotating double pendulum.
#[derive(Parser, Debug)]
#[command(name = "rdp", version, about, propagate_version = true)]
struct Cli {
    /// Output format; defaults to csv for `scan` and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized checks and pivot selection.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker threads for scans and elimination.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Abort elimination after this many seconds (exit 3).
    #[arg(long, global = true)]
    max_seconds: Option<f64>,
    /// Abort elimination when the working matrix needs about this many MB (exit 3).
    #[arg(long, global = true)]
    max_mb: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Physical parameters to the dimensionless model.
    Params(PhysArgs),
    /// Reduced Lagrangian coefficients of a model.
    Coeffs(ModelArgs),
    /// Print one of the polynomial systems.
    System {
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum)]
        emit: Option<Emit>,
    },
    /// Sylvester elimination on the half-tangent pair.
    Eliminate {
        #[arg(long, default_value = "halftangent")]
        kind: String,
        #[arg(long)]
        var: String,
    },
    /// Dixon resultant with early factor detection.
    Dixon {
        #[arg(long)]
        kind: String,
        /// Trial-divide by the vertical-equilibrium polynomials first.
        #[arg(long)]
        seed_trivial: bool,
    },
    /// All equilibria at one parameter point.
    Equilibria(ModelArgs),
    /// Values of Q where a vertical equilibrium bifurcates.
    BifQ {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        which: String,
    },
    /// Sample a bifurcation surface on a grid.
    Scan {
        /// dd, du, ud, uu, or @FILE holding a polynomial in qq, d, s, chi.
        #[arg(long)]
        surface: String,
        /// Axes as name=lo:hi:steps or name=value, comma separated.
        #[arg(long)]
        grid: String,
        /// Substitute the point-mass chi and sample over delta, sigma, Q.
        #[arg(long)]
        pmmr: bool,
    },
    /// The single rotating pendulum.
    Single {
        #[arg(long = "Q")]
        big_q: String,
    },
    /// Integrate the equations of motion.
    Simulate {
        /// JSON with `model` (parameters) and `state` ([theta, phi, dtheta, dphi]).
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        dt: f64,
        #[arg(long)]
        steps: usize,
        /// Keep every n-th sample.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct PhysArgs {
    /// JSON file with the physical parameters; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub m1: Option<String>,
    #[arg(long)]
    pub m2: Option<String>,
    #[arg(long)]
    pub l1: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    #[arg(long)]
    pub l2: Option<String>,
    #[arg(long)]
    pub i1p: Option<String>,
    #[arg(long)]
    pub i1perp: Option<String>,
    #[arg(long)]
    pub i1n: Option<String>,
    #[arg(long)]
    pub i2p: Option<String>,
    #[arg(long)]
    pub i2perp: Option<String>,
    #[arg(long)]
    pub i2n: Option<String>,
    #[arg(long)]
    pub omega_a: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// JSON file with the model parameters; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<String>,
    #[arg(long = "Q")]
    pub big_q: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rdp_core::Error),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(rdp_core::Error::Budget(_)) => 3,
            _ => 2,
        }
    }
}

/// Settings shared by every subcommand.
pub struct Budget {
    pub seed: u64,
    pub max_seconds: Option<f64>,
    pub max_mb: Option<u64>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let budget = Budget { seed: cli.seed, max_seconds: cli.max_seconds, max_mb: cli.max_mb };
    let mut format = cli.format.unwrap_or(Format::Json);
    let report = match cli.command {
        Command::Params(a) => commands::params(&a)?,
        Command::Coeffs(a) => commands::coeffs(&a)?,
        Command::System { kind, emit } => {
            match emit {
                Some(Emit::Text) => format = Format::Text,
                Some(Emit::Json) => format = Format::Json,
                None => {}
            }
            commands::system(&kind)?
        }
        Command::Eliminate { kind, var } => commands::eliminate(&kind, &var)?,
        Command::Dixon { kind, seed_trivial } => commands::dixon(&kind, seed_trivial, &budget)?,
        Command::Equilibria(a) => commands::equilibria(&a)?,
        Command::BifQ { model, which } => commands::bif_q(&model, &which)?,
        Command::Scan { surface, grid, pmmr } => {
            format = cli.format.unwrap_or(Format::Csv);
            commands::scan(&surface, &grid, pmmr)?
        }
        Command::Single { big_q } => commands::single(&big_q)?,
        Command::Simulate { config, dt, steps, stride } => commands::simulate(&config, dt, steps, stride)?,
    };
    let text = report
        .render(format)
        .ok_or_else(|| CliError::Usage(format!("`{}` has no {format:?} output", report.command).to_lowercase()))?;
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input { path: path.display().to_string(), message: e.to_string() })?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Input {
                path: "<stdout>".into(),
                message: e.to_string(),
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("RDP_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rdp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
