use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fihl_core::linalg::{RankMode, RankPolicy};
use fihl_core::Partition;

#[derive(Parser, Debug)]
#[command(name = "fihl", version, about = "FI-homology of k hom_FI(-, b)^tr, computed exactly")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Rank computation for differentials and transfer maps.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact, global = true)]
    pub rank_mode: ModeArg,

    /// Never switch to modular ranks, whatever the matrix size.
    #[arg(long, global = true)]
    pub force_exact: bool,

    /// Matrices with more columns than this use modular ranks.
    #[arg(long, default_value_t = 2000, global = true)]
    pub modular_above: usize,

    /// Worker threads (default: all cores).
    #[arg(long, env = "FIHL_THREADS", global = true)]
    pub threads: Option<usize>,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Modular,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose H_0 at a, the cokernel of the transfer map.
    H0 {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Print the closed-form prediction instead of computing.
        #[arg(long)]
        predicted: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compare computed and predicted H_0 for all 1 <= a, b <= max-b.
    CheckH0 {
        #[arg(long)]
        max_b: usize,
    },
    /// Homology of the Koszul complex, degree by degree.
    Homology {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Only this degree.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Euler characteristics of the critical pairs, the homology and the chains.
    Euler {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// The coefficient theta(lambda, nu, kappa).
    Theta {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        nu: Partition,
        #[arg(long)]
        kappa: Partition,
        /// Also evaluate the floating-point Young orthogonal form.
        #[arg(long)]
        oracle: bool,
    },
    /// Critical pairs lambda |- b, mu |- a.
    Crit {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Also print the (gamma, delta) parameters of each pair.
        #[arg(long)]
        gamma_delta: bool,
    },
    /// Sweep computed homology against the critical-pair prediction.
    Conjecture {
        #[arg(long)]
        max_a: usize,
        #[arg(long)]
        max_b: usize,
        /// Record the wall-clock time of each cell (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

/// Validated settings for one invocation.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub policy: RankPolicy,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

/// Largest `a` or `b` accepted by the commands that build matrices.
pub const MAX_DEGREE: usize = 8;

#[derive(Debug)]
pub struct UsageError(pub String);

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, UsageError> {
        let g = cli.global;
        let check = |flag: &str, v: usize| {
            if v > MAX_DEGREE {
                Err(UsageError(format!("--{flag} {v} exceeds the supported range 0..={MAX_DEGREE}")))
            } else {
                Ok(())
            }
        };
        match &cli.command {
            Command::H0 { a, b, .. } | Command::Homology { a, b, .. } | Command::Euler { a, b } => {
                check("a", *a)?;
                check("b", *b)?;
            }
            Command::CheckH0 { max_b } => check("max-b", *max_b)?,
            Command::Conjecture { max_a, max_b, .. } => {
                check("max-a", *max_a)?;
                check("max-b", *max_b)?;
                if g.out.is_none() {
                    return Err(UsageError("conjecture needs --out <report.json>".into()));
                }
            }
            Command::Crit { .. } | Command::Theta { .. } => {}
        }
        if g.threads == Some(0) {
            return Err(UsageError("--threads must be positive".into()));
        }
        let mode = match g.rank_mode {
            ModeArg::Exact => RankMode::Exact,
            ModeArg::Modular => RankMode::Modular,
        };
        Ok(RunConfig {
            command: cli.command,
            policy: RankPolicy {
                mode,
                modular_above_cols: g.modular_above,
                force_exact: g.force_exact,
            },
            threads: g.threads,
            out: g.out,
        })
    }
}
