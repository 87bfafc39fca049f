use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;

use config::NormArg;

/// Hermite-spectral experiments for the quintic (k = 2) and cubic (k = 1)
/// resonant systems.
#[derive(Debug, Parser)]
#[command(name = "resonant", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Hermite truncation N.
    #[arg(long, global = true)]
    n_modes: Option<usize>,

    /// Midpoint count M of the discrete time average (needs 2M > (k+1)(N-1)).
    #[arg(long, global = true)]
    m_times: Option<usize>,

    /// Trapezoid count of the rotation-angle integrals.
    #[arg(long, global = true)]
    m_theta: Option<usize>,

    #[arg(long, global = true, value_enum)]
    normalization: Option<NormArg>,

    /// JSON file with keys n_modes, m_times, m_theta, normalization, threads.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for the data-parallel kernels (1 gives bit-reproducible output).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Theta,
    Sum,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frequencies ω_n of the Hermite stationary waves.
    Stationary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Integrate the resonant flow and write the invariant time series as CSV.
    Evolve {
        #[arg(long)]
        k: usize,
        /// State file or token (phiK, zero, random:SEED).
        #[arg(long)]
        init: String,
        #[arg(long)]
        t_end: f64,
        #[arg(long)]
        dt: f64,
        /// CSV destination (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        sample_every: usize,
        /// Also write the final state as JSON.
        #[arg(long)]
        final_state: Option<PathBuf>,
    },
    /// Resonant-approximation error study over a list of amplitudes.
    Approx {
        #[arg(long)]
        k: usize,
        /// Comma-separated amplitudes, each in (0, 0.2].
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        /// CSV destination for the error curves (epsilon,t,error).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
    },
    /// Invariance of E under the symmetry actions.
    Symmetry {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        draws: usize,
    },
    /// Random-draw check of the operator L² bound.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate E₆ (k = 2) or E₄ (k = 1) on given states.
    Functional {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = RouteArg::Theta)]
        route: RouteArg,
        /// 2k+2 state files or tokens.
        #[arg(long, num_args = 1.., required = true)]
        inputs: Vec<String>,
    },
    /// Good/bad pair decomposition of an isometry given as a JSON array of rows.
    Decompose {
        #[arg(long)]
        matrix: PathBuf,
    },
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<resonant::Error> for CliError {
    fn from(e: resonant::Error) -> Self {
        Self { code: if e.is_numerical() { 2 } else { 1 }, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
