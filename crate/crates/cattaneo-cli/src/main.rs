//! Command-line surface over the model library: transform tabulation,
//! ensemble simulation, density inversion, boundary problems, and the
//! cross-validation suite. Exit codes: 0 ok, 1 validation failure, 2 usage
//! or parameter error.

mod commands;
mod config;
mod output;

use anyhow::Result;
use cattaneo_core::analytic::BoundarySignal;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cattaneo-cli", version, about)]
struct Cli {
    /// TOML or JSON run configuration; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed for every random stream.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory for data files and sidecars.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for ensembles; defaults to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct ParamArgs {
    /// Space order in (0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Time order in (0, 1); simulation needs (0, 1/2).
    #[arg(long)]
    beta: Option<f64>,
    /// Tempering rate >= 0.
    #[arg(long)]
    lambda: Option<f64>,
    /// Damping coefficient > 0.
    #[arg(long)]
    k: Option<f64>,
    /// Evaluation times, comma separated, ascending.
    #[arg(long, value_delimiter = ',')]
    t_grid: Option<Vec<f64>>,
    /// Frequencies, comma separated, ascending.
    #[arg(long, value_delimiter = ',')]
    xi_grid: Option<Vec<f64>>,
    /// Samples per ensemble.
    #[arg(long)]
    n_samples: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignalName {
    /// phi(t) = 1.
    One,
    /// phi(t) = e^{-rate t}.
    Exp,
    /// phi(t) = 0.
    Zero,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate the characteristic function over the xi and t grids.
    Cf(ParamArgs),
    /// Sample ensembles of the time-changed process at each grid time.
    Simulate(ParamArgs),
    /// Invert the characteristic function to a density on an x grid.
    Density {
        #[command(flatten)]
        params: ParamArgs,
        /// Half-width of the symmetric density grid.
        #[arg(long, default_value_t = 10.0)]
        x_max: f64,
        /// Density grid spacing.
        #[arg(long, default_value_t = 0.01)]
        dx: f64,
    },
    /// Closed-form time-change mean and process variance per grid time.
    Variance(ParamArgs),
    /// Boundary-value solution on the half line.
    Dirichlet {
        #[command(flatten)]
        params: ParamArgs,
        /// Positions x >= 0, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 1.0])]
        x_grid: Vec<f64>,
        /// Boundary signal at the wall.
        #[arg(long, value_enum, default_value_t = SignalName::One)]
        signal: SignalName,
        /// Decay rate for the exponential signal.
        #[arg(long, default_value_t = 1.0)]
        rate: f64,
    },
    /// Run the cross-validation suite and write a JSON report.
    Validate {
        /// Samples per Monte Carlo check (>= 100).
        #[arg(long)]
        n_samples: Option<usize>,
        /// Tiny run with widened statistical thresholds.
        #[arg(long)]
        smoke: bool,
    },
}

fn apply_params(cfg: &mut config::RunConfig, a: &ParamArgs) {
    if let Some(v) = a.alpha {
        cfg.params.alpha = v;
    }
    if let Some(v) = a.beta {
        cfg.params.beta = v;
    }
    if let Some(v) = a.lambda {
        cfg.params.lambda = v;
    }
    if let Some(v) = a.k {
        cfg.params.k = v;
    }
    if let Some(g) = &a.t_grid {
        cfg.t_grid = g.clone();
    }
    if let Some(g) = &a.xi_grid {
        cfg.xi_grid = g.clone();
    }
    if let Some(n) = a.n_samples {
        cfg.n_samples = n;
    }
}

fn run(cli: Cli) -> Result<i32> {
    if let Some(n) = cli.threads {
        if n > 0 {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
        }
    }
    let mut cfg = config::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = cli.out {
        cfg.output_dir = out;
    }
    match &cli.cmd {
        Cmd::Cf(p) => {
            apply_params(&mut cfg, p);
            commands::cmd_cf(&cfg)
        }
        Cmd::Simulate(p) => {
            apply_params(&mut cfg, p);
            commands::cmd_simulate(&cfg)
        }
        Cmd::Density { params, x_max, dx } => {
            apply_params(&mut cfg, params);
            commands::cmd_density(&cfg, *x_max, *dx)
        }
        Cmd::Variance(p) => {
            apply_params(&mut cfg, p);
            commands::cmd_variance(&cfg)
        }
        Cmd::Dirichlet { params, x_grid, signal, rate } => {
            apply_params(&mut cfg, params);
            let signal = match signal {
                SignalName::One => BoundarySignal::One,
                SignalName::Exp => BoundarySignal::Exp { rate: *rate },
                SignalName::Zero => BoundarySignal::Zero,
            };
            commands::cmd_dirichlet(&cfg, x_grid, signal)
        }
        Cmd::Validate { n_samples, smoke } => commands::cmd_validate(&cfg, *n_samples, *smoke),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
