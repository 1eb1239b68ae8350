//! Command-line arguments and the run configuration derived from them.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopfcheck_core::Mode;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const SEED_ENV: &str = "HOPFCHECK_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "hopfcheck",
    version,
    about = "Checks Cayley–Dickson laws, join H-spaces and Hopf fibrations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Law ladder of the Cayley–Dickson algebras (real, commutative, associative, ...)
    Laws(CommonArgs),
    /// Exhaustive zero-divisor search on sums of two basis vectors
    Zerodiv(CommonArgs),
    /// Spheroid laws on spheres with a multiplication
    Spheroid(CommonArgs),
    /// Imaginaroid laws on suspensions, and the f/g identities
    Imaginaroid(CommonArgs),
    /// H-space laws, associativity, and agreement of the join multiplication with the algebra
    Hspace(CommonArgs),
    /// Diamond fillers on a parameter grid: boundaries, unit norm, pole cases
    Diamond(DiamondArgs),
    /// Fibers of the Hopf projection
    Fiber(CommonArgs),
    /// Every check behind one Hopf fibration
    Fibration(CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Laws(_) => "laws",
            Command::Zerodiv(_) => "zerodiv",
            Command::Spheroid(_) => "spheroid",
            Command::Imaginaroid(_) => "imaginaroid",
            Command::Hspace(_) => "hspace",
            Command::Diamond(_) => "diamond",
            Command::Fiber(_) => "fiber",
            Command::Fibration(_) => "fibration",
        }
    }

    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Diamond(d) => &d.common,
            Command::Laws(c)
            | Command::Zerodiv(c)
            | Command::Spheroid(c)
            | Command::Imaginaroid(c)
            | Command::Hspace(c)
            | Command::Fiber(c)
            | Command::Fibration(c) => c,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Instance to check; all instances of the suite when omitted
    #[arg(long)]
    pub instance: Option<String>,
    /// Select the instance by Cayley–Dickson level instead
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long, default_value = "exact")]
    pub mode: Mode,
    /// Random samples per law, on top of the structured inputs
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Base seed; HOPFCHECK_SEED takes precedence when set
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Float-mode tolerance on residuals
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; defaults to one per core
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct DiamondArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Grid intervals per side; fillers are evaluated at (N+1)² points
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Everything that determines the content of a report.
///
/// The output path and worker count are carried but not echoed: neither
/// changes what is computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub instance: Option<String>,
    pub level: Option<u32>,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    /// `None` in exact mode.
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<u32>,
    pub format: Format,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub workers: Option<u32>,
}

impl RunConfig {
    /// Builds the configuration, applying `seed_env` (the value of
    /// `HOPFCHECK_SEED`, if set) over `--seed`.
    pub fn from_command(cmd: &Command, seed_env: Option<&str>) -> Result<Self, CliError> {
        let c = cmd.common();
        let seed = match seed_env {
            Some(v) => v.trim().parse().map_err(|_| {
                CliError::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))
            })?,
            None => c.seed,
        };
        if !(c.tolerance.is_finite() && c.tolerance >= 0.0) {
            return Err(CliError::Usage(format!(
                "tolerance must be a non-negative number, got {}",
                c.tolerance
            )));
        }
        Ok(Self {
            subcommand: cmd.name().to_string(),
            instance: c.instance.clone(),
            level: c.level,
            mode: c.mode,
            samples: c.samples,
            seed,
            tolerance: (c.mode == Mode::Float).then_some(c.tolerance),
            grid: match cmd {
                Command::Diamond(d) => Some(d.grid),
                _ => None,
            },
            format: c.format,
            output: c.output.clone(),
            workers: c.workers,
        })
    }
}
