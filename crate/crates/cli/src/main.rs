//! `cyclic-qm`: verification runs and sweeps over the cyclic-lattice library.
//!
//! Exit codes: 0 when every check passes (or, for `pauli`, the data are
//! compatible), 1 on a failed check or incompatible data, 2 on bad input.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "cyclic-qm",
    version,
    about = "Checks and sweeps for quantum mechanics on a cyclic lattice"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
struct Common {
    /// Position lattice constant `a`; `g` follows from `a·g·N = 2π`.
    /// Default `a = g = √(2π/N)`.
    #[arg(long, global = true)]
    scale_a: Option<f64>,
    /// Replace every check threshold with this value.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the command's CSV table here.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Seed for any random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Unitarity, spectra and exponential forms of X, P, T, B.
    Ops {
        #[arg(long)]
        dim: usize,
    },
    /// |<probe,[X,P] probe> - i| over several N with a = g = √(2π/N).
    /// CSV columns: n,deviation.
    CommutatorSweep {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    /// Unbiasedness of the position, momentum and TB-eigenvector bases,
    /// the quadratic-phase DFT identity, S and the gX - aP eigenbasis.
    /// CSV columns: pair,r,s,overlap.
    Mub {
        #[arg(long)]
        dim: usize,
    },
    /// Free-particle evolution. CSV columns: t,x,probability; printed to
    /// stdout unless --csv is given. The report is written only with --json.
    Evolve {
        #[arg(long)]
        dim: usize,
        /// Named initial state.
        #[arg(long, value_enum, conflicts_with = "state")]
        preset: Option<Preset>,
        /// JSON file with N [re, im] pairs in label order.
        #[arg(long, value_name = "PATH")]
        state: Option<PathBuf>,
        /// Sample from 0 to the revival period.
        #[arg(long, value_enum, conflicts_with = "times")]
        until: Option<Until>,
        /// Sample times in units of τ.
        #[arg(long, value_delimiter = ',')]
        times: Option<Vec<f64>>,
        /// Number of intervals when sampling up to the revival period.
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
    },
    /// Closed-form sums against direct summation on a grid of r.
    /// CSV columns: variant,r,closed_re,closed_im,direct_re,direct_im,residual,status.
    Sums {
        #[arg(long)]
        dim: usize,
        /// Random real values of r added to the integer and half-odd grid.
        #[arg(long, default_value_t = 20)]
        random: usize,
    },
    /// Two-site phase reconstruction from position and momentum data.
    /// With --sweep K, a K×K compatibility grid over the unit square
    /// (CSV columns: rho_sq,varpi_sq,compatible) instead.
    Pauli {
        #[arg(long, required_unless_present = "sweep")]
        rho_sq: Option<f64>,
        #[arg(long, required_unless_present = "sweep")]
        varpi_sq: Option<f64>,
        #[arg(long, value_name = "K", conflicts_with_all = ["rho_sq", "varpi_sq"])]
        sweep: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// All weight on the site at offset N/2.
    Delta,
    /// Discrete Gaussian exp(-πx²/N).
    GaussianProbe,
    /// Equal amplitudes.
    Uniform,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Until {
    Revival,
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let c = &cli.common;
    let out = report::Output::new(c.json.clone(), c.csv.clone(), c.tol);
    match cli.command {
        Command::Ops { dim } => commands::ops::run(&out, dim, c.scale_a),
        Command::CommutatorSweep { dims } => commands::sweep::run(&out, &dims),
        Command::Mub { dim } => commands::mub::run(&out, dim, c.scale_a),
        Command::Evolve {
            dim,
            preset,
            state,
            until,
            times,
            steps,
            mass,
        } => {
            let input = match (preset, state) {
                (_, Some(path)) => commands::evolve::Input::File(path),
                (Some(p), None) => commands::evolve::Input::Preset(p),
                (None, None) => commands::evolve::Input::Preset(Preset::Delta),
            };
            let grid = match (until, times) {
                (_, Some(ts)) => commands::evolve::Grid::Times(ts),
                _ => commands::evolve::Grid::Revival(steps),
            };
            commands::evolve::run(&out, dim, c.scale_a, mass, input, grid)
        }
        Command::Sums { dim, random } => commands::sums::run(&out, dim, c.seed, random),
        Command::Pauli {
            rho_sq,
            varpi_sq,
            sweep,
        } => match sweep {
            Some(k) => commands::pauli::sweep(&out, k),
            None => commands::pauli::run(
                &out,
                rho_sq.unwrap_or_default(),
                varpi_sq.unwrap_or_default(),
            ),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
