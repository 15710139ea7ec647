//! `golfer`: greedy tournament experiments from the command line.
//!
//! Exit codes: 0 when every checked claim held, 2 when a guarantee or
//! characterization failed (the witness is printed), 1 on usage or input errors.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "golfer", version, about = "Greedy social golfer and Oberwolfach tournaments")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Clique,
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    First,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    RoundRobin,
    Matching,
    Clique,
    CycleOdd,
    CycleMod4,
    CycleMod2,
    Design,
    Oberwolfach,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    Min,
    Max,
    Characterize,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct ShapeArgs {
    /// Block size.
    #[arg(long, short)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Kind::Clique)]
    pub shape: Kind,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the greedy algorithm once.
    Run {
        #[arg(long, short)]
        n: usize,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Random)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Factors a random choice is drawn from.
        #[arg(long, default_value_t = golfer_core::greedy::DEFAULT_POOL)]
        pool: usize,
        /// Also write the tournament file here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Build a tournament from one of the explicit families.
    Construct {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, short)]
        n: Option<usize>,
        #[arg(long, short)]
        k: Option<usize>,
        #[arg(long, short)]
        i: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the tournament file here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Print the vertex split and where every round came from.
        #[arg(long)]
        explain: bool,
    },
    /// Check a tournament file.
    Verify { file: std::path::PathBuf },
    /// Round guarantees and approximation ratios.
    Bound {
        #[arg(long, short)]
        n: usize,
        #[command(flatten)]
        shape: ShapeArgs,
        /// Slack in the cycle ratio `1/(3+eps)`, as `p/q`.
        #[arg(long, default_value = "1")]
        epsilon: String,
    },
    /// Check the stuck-state characterization on a tournament file.
    Characterize { file: std::path::PathBuf },
    /// Extend a stuck tournament by one round beyond the guarantee.
    Repair {
        file: std::path::PathBuf,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Exhaustive search on tiny instances.
    Oracle {
        #[arg(long, short)]
        n: usize,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_enum, default_value_t = OracleMode::Min)]
        mode: OracleMode,
        /// Result cache; defaults to `$GOLFER_CACHE_DIR`, no caching if unset.
        #[arg(long)]
        cache_dir: Option<std::path::PathBuf>,
        /// Key the memo on canonical relabelings.
        #[arg(long)]
        canonical: bool,
    },
    /// Many random greedy runs per n, compared against the guarantee.
    Sweep {
        /// Comma-separated list of n.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = golfer_core::greedy::DEFAULT_POOL)]
        pool: usize,
        /// Fail on n not divisible by k instead of skipping it.
        #[arg(long)]
        strict: bool,
    },
}

/// What a subcommand reports back to `main`.
pub enum Outcome {
    Held,
    Violated,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let fmt = cli.format;
    let res = match cli.command {
        Command::Run { n, shape, strategy, seed, pool, out } => {
            commands::run(fmt, n, shape, strategy, seed, pool, out.as_deref())
        }
        Command::Construct { family, n, k, i, seed, out, explain } => {
            commands::construct(fmt, family, n, k, i, seed, out.as_deref(), explain)
        }
        Command::Verify { file } => commands::verify(fmt, &file),
        Command::Bound { n, shape, epsilon } => commands::bound(fmt, n, shape, &epsilon),
        Command::Characterize { file } => commands::characterize(fmt, &file),
        Command::Repair { file, out } => commands::repair(fmt, &file, out.as_deref()),
        Command::Oracle { n, shape, mode, cache_dir, canonical } => {
            let dir = cache_dir.or_else(|| std::env::var_os("GOLFER_CACHE_DIR").map(Into::into));
            commands::oracle(fmt, n, shape, mode, dir.as_deref(), canonical)
        }
        Command::Sweep { n, shape, trials, seed, pool, strict } => {
            commands::sweep(fmt, &n, shape, trials, seed, pool, strict)
        }
    };
    match res {
        Ok(Outcome::Held) => ExitCode::SUCCESS,
        Ok(Outcome::Violated) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
