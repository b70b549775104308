mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Generate, color, verify, and sweep cooperative coloring instances.
#[derive(Parser, Debug)]
#[command(name = "coopcolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated instance (and chain document where applicable).
    #[command(subcommand)]
    Gen(GenCmd),
    /// Partition Z_n against the blue cycle 0..n-1 and a red permutation.
    Partition {
        #[arg(long)]
        n: usize,
        /// Comma-separated permutation of 0..n-1.
        #[arg(long)]
        perm: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Produce a cooperative coloring.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Check a coloring against an instance; exit 0 iff it is cooperative.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Lower and upper bounds for k-partite families of maximum degree d.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        epsilon: f64,
        /// Family size for the local-lemma diagnostic (default: ceil(upper)).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Exhaustive searches.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Seeded semi-random trials over a range of family sizes.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Time the two-cycle partition over a geometric grid of sizes.
    Bench {
        /// First size of the grid; each next size doubles.
        #[arg(long, default_value_t = 1000)]
        start: usize,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct GenOut {
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ChainOut {
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Chain document path (default: <out stem>.chain.json when -o is given).
    #[arg(long)]
    chain_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    TightCycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: ChainOut,
    },
    LooseCycle {
        /// Number of edges.
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: ChainOut,
    },
    TightPath {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: ChainOut,
    },
    LoosePath {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: ChainOut,
    },
    /// The complete k-partite family on [k]^m, in implicit form.
    LowerBound {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: GenOut,
    },
    RandomKpartite {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Subcommand, Debug)]
enum ColorCmd {
    /// Two chain documents, each with at most one 2-edge.
    ChainPair {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Semi-random process on a k-partite family.
    Semirandom {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Round budget (default: 10·n).
        #[arg(long)]
        max_rounds: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Failure report path (default: <out stem>.failure.json, or stdout).
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Search-node cap (default: $COOPCOLOR_MAX_ORACLE or 10^8).
    #[arg(long)]
    max_assignments: Option<u64>,
    #[arg(long, default_value_t = 32)]
    max_vertices: usize,
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Lexicographically first cooperative coloring, or "none".
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// First valid blue/red partition by brute force, or "none".
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        perm: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ExperimentCmd {
    /// CSV rows (m, successes, trials, mean_rounds); trial t uses seed + t.
    Sweep {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dmax: usize,
        /// Inclusive range a:b of family sizes.
        #[arg(long)]
        m: String,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3000)]
        max_rounds: usize,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> output::CmdResult {
    use commands::*;
    match cli.command {
        Command::Gen(g) => match g {
            GenCmd::TightCycle { n, k, out } => gen_chain(
                "tight-cycle",
                n,
                k,
                out.out.as_deref(),
                out.chain_out.as_deref(),
            ),
            GenCmd::LooseCycle { edges, k, out } => gen_chain(
                "loose-cycle",
                edges,
                k,
                out.out.as_deref(),
                out.chain_out.as_deref(),
            ),
            GenCmd::TightPath { n, k, out } => gen_chain(
                "tight-path",
                n,
                k,
                out.out.as_deref(),
                out.chain_out.as_deref(),
            ),
            GenCmd::LoosePath { edges, k, out } => gen_chain(
                "loose-path",
                edges,
                k,
                out.out.as_deref(),
                out.chain_out.as_deref(),
            ),
            GenCmd::LowerBound { k, m, out } => gen_lower_bound(k, m, out.out.as_deref()),
            GenCmd::RandomKpartite {
                k,
                m,
                n,
                dmax,
                seed,
                out,
            } => gen_random(k, m, n, dmax, seed, out.out.as_deref()),
        },
        Command::Partition { n, perm, out } => partition(n, &perm, out.as_deref()),
        Command::Color(c) => match c {
            ColorCmd::ChainPair { h1, h2, out } => color_chain_pair(&h1, &h2, out.as_deref()),
            ColorCmd::Semirandom {
                instance,
                seed,
                epsilon,
                max_rounds,
                out,
                report,
            } => color_semirandom(
                &instance,
                seed,
                epsilon,
                max_rounds,
                out.as_deref(),
                report.as_deref(),
            ),
        },
        Command::Verify { instance, coloring } => verify(&instance, &coloring),
        Command::Bounds { k, d, epsilon, m } => bounds(k, d, epsilon, m),
        Command::Oracle(o) => match o {
            OracleCmd::Solve {
                instance,
                budget,
                out,
            } => oracle_solve(
                &instance,
                budget.max_assignments,
                budget.max_vertices,
                out.as_deref(),
            ),
            OracleCmd::Partition { n, perm, out } => oracle_partition(n, &perm, out.as_deref()),
        },
        Command::Experiment(ExperimentCmd::Sweep {
            k,
            n,
            dmax,
            m,
            trials,
            seed,
            max_rounds,
            epsilon,
            out,
        }) => sweep(
            SweepArgs {
                k,
                n,
                dmax,
                m: &m,
                trials,
                seed,
                max_rounds,
                epsilon,
            },
            out.as_deref(),
        ),
        Command::Bench {
            start,
            count,
            reps,
            seed,
            out,
        } => bench(start, count, reps, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("coopcolor: {f}");
            }
            ExitCode::from(f.code)
        }
    }
}
