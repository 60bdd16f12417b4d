//! `stablemat`: solve, check and generate instances from the command line.
//!
//! Exit codes: 0 for yes (a stable set exists, the set is stable), 1 for no,
//! 2 for bad input or internal errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stablemat::generate::Labels;

#[derive(Parser, Debug)]
#[command(name = "stablemat", version, about = "Stable common independent sets of two matroids with ties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a stable common independent set exists and print one.
    Solve {
        /// Instance file, or `-` for stdin.
        path: PathBuf,
        /// Print the round-by-round trace.
        #[arg(long)]
        trace: bool,
        /// Print the verdict and trace as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check whether a given set is stable and report every blocking element.
    Check {
        path: PathBuf,
        /// Comma-separated element ids; empty for the empty set.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// List every stable set by exhaustive enumeration.
    Oracle {
        path: PathBuf,
        /// Largest ground set to enumerate.
        #[arg(long, env = "STABLEMAT_ORACLE_MAX", default_value_t = stablemat::stability::DEFAULT_BRUTE_FORCE_BOUND)]
        max_size: usize,
    },
    /// Print a generated instance file.
    Gen(GenArgs),
    /// Solve generated random-partition instances and print a CSV of costs.
    Bench {
        /// Comma-separated ground set sizes.
        #[arg(long, value_delimiter = ',', default_value = "8,16,32")]
        sizes: Vec<usize>,
        /// Seeds per size, `0..k`.
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        #[arg(long, default_value_t = 3)]
        tiers: usize,
        #[arg(long, default_value = "random")]
        labels: LabelArg,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ground set size (random kinds).
    #[arg(long, default_value_t = 8)]
    size: usize,
    #[arg(long, default_value_t = 2)]
    men: usize,
    #[arg(long, default_value_t = 2)]
    women: usize,
    /// Tier levels per side; 1 means every element is tied.
    #[arg(long, default_value_t = 1)]
    tiers: usize,
    /// Probability that a pair is acceptable (marriage-ties).
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    #[arg(long, default_value = "e1")]
    labels: LabelArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GenKind {
    MarriageTies,
    RandomPartition,
    RandomExplicit,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LabelArg {
    E1,
    E2,
    Random,
}

impl From<LabelArg> for Labels {
    fn from(l: LabelArg) -> Self {
        match l {
            LabelArg::E1 => Labels::AllE1,
            LabelArg::E2 => Labels::AllE2,
            LabelArg::Random => Labels::Random,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve { path, trace, json } => commands::solve(&path, trace, json),
        Command::Check { path, set, json } => commands::check(&path, &set, json),
        Command::Oracle { path, max_size } => commands::oracle(&path, max_size),
        Command::Gen(args) => commands::gen(&args),
        Command::Bench { sizes, seeds, tiers, labels } => commands::bench(&sizes, seeds, tiers, labels.into()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
