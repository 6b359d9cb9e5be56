//! `mctele`: batch verification of multicopy teleportation.

mod range;
mod report;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use range::IntRange;
use suite::{run_cell, CellParams, Status, Suite};

#[derive(Parser, Debug)]
#[command(
    name = "mctele",
    version,
    about = "Verify the optimal multicopy teleportation protocol numerically"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte-Carlo check of the success probability and output fidelity.
    Verify(Common),
    /// Success-probability and coefficient checks together.
    Sweep(Common),
    /// Decomposition coefficients of the transposed symmetric projector.
    Lemmas(Common),
    /// Reduced optimum and perturbation falsifier (`--samples` trials).
    Optimality(Common),
    /// Storage and retrieval of random channels.
    Sar(SarArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Local dimensions, e.g. `2`, `2..4`, `2,3`.
    #[arg(long, default_value = "2")]
    d: IntRange,
    /// Numbers of copies.
    #[arg(long, default_value = "1..3")]
    k: IntRange,
    #[arg(long, default_value_t = 25)]
    samples: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to available parallelism.
    #[arg(long)]
    threads: Option<usize>,
    /// Omit the generation timestamp and wall times.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args, Debug, Clone)]
struct SarArgs {
    #[command(flatten)]
    common: Common,
    /// Output dimension of the stored channels; defaults to `d`.
    #[arg(long)]
    d_out: Option<usize>,
    #[arg(long, default_value_t = 2)]
    kraus_rank: usize,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suite, common, d_out, kraus_rank) = match cli.command {
        Command::Verify(c) => (Suite::Theorem, c, None, 2),
        Command::Sweep(c) => (Suite::Sweep, c, None, 2),
        Command::Lemmas(c) => (Suite::Lemmas, c, None, 2),
        Command::Optimality(c) => (Suite::Optimality, c, None, 2),
        Command::Sar(s) => (Suite::Sar, s.common, s.d_out, s.kraus_rank),
    };

    if !(common.tol > 0.0) {
        return usage_error("--tol must be positive");
    }
    if common.samples == 0 {
        return usage_error("--samples must be positive");
    }
    if common.d.values().contains(&0) || common.k.values().contains(&0) {
        return usage_error("--d and --k values must be at least 1");
    }
    if d_out == Some(0) || kraus_rank == 0 {
        return usage_error("--d-out and --kraus-rank must be positive");
    }
    if common.threads == Some(0) {
        return usage_error("--threads must be positive");
    }

    let params = CellParams {
        suite,
        samples: common.samples,
        tol: common.tol,
        d_out,
        kraus_rank,
    };
    let grid: Vec<(usize, usize)> = common
        .d
        .values()
        .iter()
        .flat_map(|&d| common.k.values().iter().map(move |&k| (d, k)))
        .collect();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = common.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return usage_error(&format!("cannot start worker pool: {e}")),
    };
    let cells: Vec<suite::Cell> = pool.install(|| {
        grid.par_iter()
            .map(|&(d, k)| {
                run_cell(
                    d,
                    k,
                    mctele::rng::derive_seed2(common.seed, d as u64, k as u64),
                    &params,
                )
            })
            .collect()
    });

    let pass = cells.iter().all(|c| c.status == Status::Pass);
    let timestamp = if common.no_timestamp {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|t| t.as_secs())
                .unwrap_or(0),
        )
    };
    let text = match common.format {
        Format::Csv => report::csv(&cells, timestamp),
        Format::Json => {
            let config = json!({
                "suite": suite,
                "d": common.d.values(),
                "k": common.k.values(),
                "samples": common.samples,
                "tol": common.tol,
                "seed": common.seed,
                "d_out": d_out,
                "kraus_rank": kraus_rank,
            });
            report::json(config, &cells, timestamp, pass)
        }
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_FAILURE);
            }
        }
        None => print!("{text}"),
    }

    for c in cells.iter().filter(|c| c.status != Status::Pass) {
        eprintln!(
            "d={} k={}: {:?}: {}",
            c.d,
            c.k,
            c.status,
            c.detail.as_deref().unwrap_or("")
        );
    }
    let passed = cells.iter().filter(|c| c.status == Status::Pass).count();
    eprintln!("{passed}/{} cells passed", cells.len());
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}
