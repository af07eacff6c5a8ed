//! Command-line front end shared by the `qracah` binary.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::{Error, Result};

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;

pub use config::{Model, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Double,
    Extended,
}

#[derive(Debug, Parser)]
#[command(name = "qracah", about = "Multivariable q-Racah polynomials on a truncated grid")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat key = value parameter file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum)]
    pub precision: Option<Precision>,

    /// Overrides every suite tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[arg(long, global = true)]
    pub suite: Vec<String>,
}

#[derive(Clone, Copy, Debug, Subcommand)]
pub enum Command {
    /// Weights, dual weights, norm ratios and the grid.
    Weights,
    /// Polynomial coefficients and renormalized grid values.
    Poly,
    /// Gram matrix of the family.
    Gram,
    /// Norms against the closed-form prediction.
    Norms,
    /// Transform kernels applied to the configured input.
    Transform,
    /// Residual suites; exit status 1 if any fails.
    Verify,
    /// Racah family, norms and orthogonal matrix.
    Racah,
    /// Deviation of the rescaled q-family from the Racah family.
    Limit,
}

/// Runs one invocation; returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let path = cli.config.as_ref().ok_or_else(|| Error::InvalidInput("--config PATH is required".into()))?;
    let mut config = RunConfig::load(path)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(tol) = cli.tol {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("--tol must be positive, got {tol}")));
        }
        config.tolerance = Some(tol);
    }
    let precision = match cli.precision {
        Some(p) => p,
        None => Precision::from_str(&config.precision, true).map_err(Error::InvalidInput)?,
    };
    if precision == Precision::Extended {
        return Err(Error::Unsupported("extended precision is not implemented; use --precision double".into()));
    }
    std::fs::create_dir_all(&cli.out)?;
    let start = Instant::now();
    let (code, summary) = match cli.command {
        Command::Weights => (0, commands::weights(&config, &cli.out)?),
        Command::Poly => (0, commands::poly(&config, &cli.out)?),
        Command::Gram => (0, commands::gram(&config, &cli.out)?),
        Command::Norms => (0, commands::norms(&config, &cli.out)?),
        Command::Transform => (0, commands::transform(&config, &cli.out)?),
        Command::Racah => (0, commands::racah(&config, &cli.out)?),
        Command::Limit => (0, commands::limit(&config, &cli.out)?),
        Command::Verify => {
            let (ok, text) = commands::verify(&config, &cli.suite, &cli.out)?;
            (if ok { 0 } else { 1 }, text)
        }
    };
    print!("{summary}");
    if !summary.ends_with('\n') {
        println!();
    }
    eprintln!("wall time {:.3} s", start.elapsed().as_secs_f64());
    Ok(code)
}
