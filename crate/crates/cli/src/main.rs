//! kronvec: pairwise kernel ridge regression with vec-trick matvecs.
//!
//! Subcommands: `generate` writes a synthetic parity-grid dataset as CSV,
//! `run` executes a cross-validated experiment from a TOML config and emits
//! line-delimited JSON results, `benchmark` compares the vec-trick backend
//! against the explicit kernel-matrix backend over a ladder of sizes.

mod bench;
mod config;
mod data;
mod experiment;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};
use kronvec::eval::{generate_synthetic, SyntheticPattern};
use kronvec::SideData;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "kronvec",
    version,
    about = "Pairwise kernel learning via sums of Kronecker products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic chessboard/tablecloth dataset as CSV files
    Generate {
        /// `chessboard` (XOR of parities) or `tablecloth` (OR of parities)
        #[arg(long)]
        pattern: String,
        /// Number of drugs (grid rows)
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        drugs: u64,
        /// Number of targets (grid columns)
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        targets: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory for interactions.csv and the feature files
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a cross-validated experiment described by a TOML config
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Fold-level parallelism
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Fit the config's problem through both backends across subsample sizes
    Benchmark {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated ascending pair counts, e.g. 1000,2000,4000
        #[arg(long)]
        sizes: String,
        #[arg(long, value_enum, default_value_t = bench::Backend::Both)]
        backend: bench::Backend,
        /// CSV destination; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ErrorRecord {
    record: &'static str,
    message: String,
}

fn run_generate(
    pattern: &str,
    drugs: usize,
    targets: usize,
    seed: u64,
    out: &PathBuf,
) -> Result<()> {
    let pattern: SyntheticPattern = pattern.parse()?;
    let dataset = generate_synthetic(pattern, drugs, targets, seed)?;
    std::fs::create_dir_all(out)?;

    let drug_ids: Vec<String> = (0..drugs).map(|i| format!("d{i}")).collect();
    let target_ids: Vec<String> = (0..targets).map(|i| format!("t{i}")).collect();

    let rows: Vec<(String, String, f64)> = dataset
        .pairs
        .first_ids()
        .iter()
        .zip(dataset.pairs.second_ids())
        .zip(dataset.pairs.labels().expect("synthetic data is labeled"))
        .map(|((&d, &t), &y)| (drug_ids[d].clone(), target_ids[t].clone(), y))
        .collect();
    data::write_interactions(&out.join("interactions.csv"), &rows)?;

    let SideData::Features(drug_features) = &dataset.drug_side else {
        unreachable!("synthetic data carries features")
    };
    let Some(SideData::Features(target_features)) = &dataset.target_side else {
        unreachable!("synthetic data carries features")
    };
    data::write_features(&out.join("drug_features.csv"), &drug_ids, drug_features)?;
    data::write_features(
        &out.join("target_features.csv"),
        &target_ids,
        target_features,
    )?;
    eprintln!(
        "wrote {} pairs over a {drugs}x{targets} grid to {}",
        rows.len(),
        out.display()
    );
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate {
            pattern,
            drugs,
            targets,
            seed,
            out,
        } => run_generate(&pattern, drugs as usize, targets as usize, seed, &out),
        Command::Run { config, jobs } => {
            let exp = config::validate(config::load_config(&config)?)?;
            experiment::run_experiment(&exp, jobs)
        }
        Command::Benchmark {
            config,
            sizes,
            backend,
            out,
        } => {
            let exp = config::validate(config::load_config(&config)?)?;
            let sizes = bench::parse_sizes(&sizes)?;
            bench::run_benchmark(&exp, &sizes, backend, out.as_deref())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(error) = dispatch(cli) {
        let record = ErrorRecord {
            record: "error",
            message: format!("{error:#}"),
        };
        eprintln!(
            "{}",
            serde_json::to_string(&record).unwrap_or_else(|_| error.to_string())
        );
        std::process::exit(1);
    }
}
