//! `lingoe`: analyze linear cellular automata on linear subshifts from JSON
//! instance files.
//!
//! Exit codes: 0 completed, 1 usage error, 2 invalid input, 3 a mathematical
//! invariant was violated (the report is still printed).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "lingoe", version, about = "Linear cellular automata and linear subshifts: exact finite-window analysis")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalFlags,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalFlags {
    /// Field override: GF(p), a bare prime, or Q.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for random instances and pair sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest witness radius for the pre-injectivity scan.
    #[arg(long, global = true)]
    pub rmax: Option<usize>,
    /// Largest window (box side, or ball radius on free groups).
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    /// Use plateau stabilization with this many equal steps.
    #[arg(long, global = true)]
    pub plateau: Option<usize>,
    /// Also write the output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pre-injectivity, surjectivity and oracle verdicts for an instance.
    Analyze {
        instance: PathBuf,
        /// Also check Δ-irreducibility for Δ = ball(R); repeatable.
        #[arg(long = "delta", value_name = "R")]
        delta: Vec<usize>,
    },
    /// Mean-dimension profile of the instance's subshift.
    Mdim { instance: PathBuf },
    /// Greedy tiling of a region by translates of E.
    Tile {
        #[arg(long, default_value = "Z")]
        group: String,
        /// JSON list of elements, e.g. '[[0],[1]]'.
        #[arg(long = "E", alias = "e", value_name = "JSON")]
        shape: String,
        /// JSON list of elements, or box:N / ball:N.
        #[arg(long)]
        region: String,
    },
    /// Garden of Eden cross-check on seeded random automata (full shift).
    GoeScan {
        /// Number of instances; seeds run from --seed upward.
        #[arg(long, default_value_t = 200)]
        seeds: usize,
        #[arg(long, default_value = "Z")]
        group: String,
        #[arg(long, default_value_t = 2)]
        alphabet_dim: usize,
        /// JSON list of memory elements; defaults to the ball of radius 1.
        #[arg(long)]
        memory: Option<String>,
    },
    /// Run a registered example and compare with its expected verdicts.
    Example {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Print the example as an instance file instead of running it.
        #[arg(long)]
        export: bool,
    },
    /// Search for a violation of Δ-irreducibility.
    Irreducible {
        instance: PathBuf,
        /// Δ = ball(R); repeatable.
        #[arg(long = "delta", value_name = "R", default_values_t = [1])]
        delta: Vec<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(path) = &cli.global.json_out {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if let Some(msg) = &out.violation {
                eprintln!("invariant violation: {msg}");
            }
            ExitCode::from(out.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
