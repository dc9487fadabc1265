//! `srg-transfer`: certificates, weight synthesis, sweeps and walk traces for
//! pair perturbations of strongly regular graphs.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use input::{PairArgs, Source, Weights};

#[derive(Parser, Debug)]
#[command(name = "srg-transfer", version, about = "State transfer on perturbed strongly regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Human,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide PST / PGST for one weighted pair and verify it numerically
    Certify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        weights: Weights,
        /// Skip the PGST fallback
        #[arg(long)]
        pst_only: bool,
        /// Scan horizon for the numeric check when no PST time exists
        #[arg(long, default_value_t = 100.0)]
        horizon: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// List weights (beta, gamma) that give PST on the chosen pair
    Synthesize {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        pair: PairArgs,
        /// Odd q1, q2 range up to this bound
        #[arg(long, default_value_t = 99)]
        bound: u64,
        /// Keep at most this many candidates
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Certify over a grid of rational beta values
    Sweep {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        pair: PairArgs,
        /// Largest |p| in beta = p/q
        #[arg(long, default_value_t = 9)]
        max_num: u64,
        /// Largest q in beta = p/q
        #[arg(long, default_value_t = 9)]
        max_den: u64,
        /// Fixed loop weight; default is gamma = -beta
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        /// Scan horizon for rows without a PST time
        #[arg(long, default_value_t = 20.0)]
        horizon: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Worker threads
        #[arg(long, env = "SRG_TRANSFER_JOBS")]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Fidelity trace |U(t)_uv| on the explicit graph
    Simulate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        weights: Weights,
        #[arg(long, default_value_t = 10.0)]
        horizon: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// csv prints the trace, json a summary
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check that a graph is strongly regular and report its invariants
    VerifyGraph {
        #[command(flatten)]
        source: Source,
        /// Also compare edge-perturbed characteristic polynomials
        #[arg(long)]
        edges: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Parameter-level PST predicates for graph families
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCommand {
    /// OA(k, n) graphs
    Oa {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Affine polar graphs VO^±(2e, q)
    AffinePolar {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        q: u64,
        /// elliptic or hyperbolic
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

fn run(cli: Cli) -> srg_transfer::Result<(String, bool)> {
    match cli.command {
        Command::Certify { source, pair, weights, pst_only, horizon, step, format } => {
            commands::certify(&source, &pair, &weights, pst_only, horizon, step, format)
        }
        Command::Synthesize { source, pair, bound, limit, format } => {
            commands::synthesize(&source, &pair, bound, limit, format)
        }
        Command::Sweep { source, pair, max_num, max_den, gamma, horizon, step, jobs, format } => {
            let grid = commands::SweepGrid { max_num, max_den, gamma, horizon, step };
            commands::sweep(&source, &pair, &grid, jobs, format)
        }
        Command::Simulate { source, pair, weights, horizon, step, format } => {
            commands::simulate(&source, &pair, &weights, horizon, step, format)
        }
        Command::VerifyGraph { source, edges, format } => commands::verify_graph(&source, edges, format),
        Command::Family { family } => match family {
            FamilyCommand::Oa { k, n, format } => commands::family_oa(k, n, format),
            FamilyCommand::AffinePolar { e, q, kind, format } => commands::family_affine_polar(e, q, &kind, format),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
