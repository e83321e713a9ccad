//! The `benchmark` subcommand: fit the same ridge problem through the
//! vec-trick backend and the explicit kernel-matrix backend over a ladder of
//! subsample sizes, recording time, memory and op counts as plot-ready CSV.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use kronvec::eval::resolve_base_matrices;
use kronvec::{
    build_explicit, minres_solve, relabel_compact, ridge_fit, ExplicitRidgeOperator, PairSample,
    RidgeOperator, SymmetricOperator,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::ValidatedExperiment;
use crate::experiment::load_dataset;

pub const MEMORY_BUDGET_ENV: &str = "KRONVEC_MEMORY_BUDGET_BYTES";
const DEFAULT_MEMORY_BUDGET: u64 = 2 * 1024 * 1024 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Backend {
    Gvt,
    Explicit,
    Both,
}

impl Backend {
    fn wants_gvt(self) -> bool {
        matches!(self, Backend::Gvt | Backend::Both)
    }
    fn wants_explicit(self) -> bool {
        matches!(self, Backend::Explicit | Backend::Both)
    }
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    m: usize,
    q: usize,
    backend: &'static str,
    matvec_ms: Option<f64>,
    fit_ms: Option<f64>,
    iterations: Option<usize>,
    peak_kernel_bytes: u64,
    gvt_ops: u64,
    dual_gap: Option<f64>,
    note: Option<String>,
}

pub fn parse_sizes(raw: &str) -> Result<Vec<usize>> {
    let sizes: Vec<usize> = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .with_context(|| format!("bad size `{s}`"))
        })
        .collect::<Result<_>>()?;
    if sizes.is_empty() {
        bail!("at least one size is required");
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        bail!("sizes must be strictly ascending");
    }
    Ok(sizes)
}

fn memory_budget() -> Result<u64> {
    match std::env::var(MEMORY_BUDGET_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .with_context(|| format!("{MEMORY_BUDGET_ENV} must be a byte count, got `{raw}`")),
        Err(_) => Ok(DEFAULT_MEMORY_BUDGET),
    }
}

fn timed_ms<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed().as_secs_f64() * 1e3)
}

fn mean_matvec_ms(op: &dyn SymmetricOperator, probe: &[f64], reps: usize) -> f64 {
    let start = Instant::now();
    for _ in 0..reps {
        std::hint::black_box(op.apply(std::hint::black_box(probe)));
    }
    start.elapsed().as_secs_f64() * 1e3 / reps as f64
}

pub fn run_benchmark(
    exp: &ValidatedExperiment,
    sizes: &[usize],
    backend: Backend,
    out: Option<&Path>,
) -> Result<()> {
    let config = &exp.config;
    let dataset = load_dataset(exp)?;
    let (drug, target) = resolve_base_matrices(&dataset, exp.base.as_deref())?;
    let budget = memory_budget()?;

    let n_total = dataset.pairs.len();
    if let Some(&too_big) = sizes.iter().find(|&&s| s > n_total) {
        bail!("size {too_big} exceeds the {n_total} available pairs");
    }

    let mut order: Vec<usize> = (0..n_total).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(config.seed));

    let mut rows: Vec<BenchRow> = Vec::new();
    let mut fits_run = 0usize;

    for &n in sizes {
        let sample: PairSample = dataset.pairs.subset(&order[..n]);
        let y = sample
            .labels()
            .expect("validated dataset has labels")
            .to_vec();
        let m = relabel_compact(sample.first_ids()).unique_count();
        let q = relabel_compact(sample.second_ids()).unique_count();
        let max_iter = config.max_iter.unwrap_or(n);
        // base kernels gathered over the subsample's unique objects
        let gvt_kernel_bytes = 8 * (m as u64 * m as u64 + q as u64 * q as u64);

        let mut gvt_dual: Option<Vec<f64>> = None;
        if backend.wants_gvt() {
            let op =
                RidgeOperator::new(exp.kernel, &drug, target.as_deref(), &sample, config.lambda)?;
            let matvec_ms = mean_matvec_ms(&op, &y, 5);
            let (fit_result, fit_ms) = timed_ms(|| {
                ridge_fit(
                    exp.kernel,
                    drug.clone(),
                    target.clone(),
                    &sample,
                    config.lambda,
                    Some(max_iter),
                    config.rel_tol,
                )
            });
            let (model, stats) = fit_result?;
            rows.push(BenchRow {
                n,
                m,
                q,
                backend: "gvt",
                matvec_ms: Some(matvec_ms),
                fit_ms: Some(fit_ms),
                iterations: Some(stats.iterations),
                peak_kernel_bytes: gvt_kernel_bytes,
                gvt_ops: stats.gvt_ops,
                dual_gap: None,
                note: None,
            });
            gvt_dual = Some(model.dual);
            fits_run += 1;
        }

        if backend.wants_explicit() {
            let bytes = 8 * (n as u64) * (n as u64);
            if bytes > budget {
                rows.push(BenchRow {
                    n,
                    m,
                    q,
                    backend: "explicit",
                    matvec_ms: None,
                    fit_ms: None,
                    iterations: None,
                    peak_kernel_bytes: bytes,
                    gvt_ops: 0,
                    dual_gap: None,
                    note: Some(format!(
                        "skipped: kernel would need {bytes} bytes, budget {budget}"
                    )),
                });
            } else {
                let (explicit, build_ms) = timed_ms(|| {
                    build_explicit(exp.kernel, &drug, target.as_deref(), &sample, &sample)
                });
                let explicit = explicit?;
                let op = ExplicitRidgeOperator {
                    kernel_matrix: explicit.matrix,
                    lambda: config.lambda,
                };
                let matvec_ms = mean_matvec_ms(&op, &y, 5);
                let (outcome, solve_ms) =
                    timed_ms(|| minres_solve(&op, &y, max_iter, config.rel_tol, |_, _| true));
                let outcome = outcome?;
                let dual_gap = gvt_dual.as_ref().map(|g| {
                    g.iter()
                        .zip(&outcome.solution)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                });
                rows.push(BenchRow {
                    n,
                    m,
                    q,
                    backend: "explicit",
                    matvec_ms: Some(matvec_ms),
                    fit_ms: Some(build_ms + solve_ms),
                    iterations: Some(outcome.iterations),
                    peak_kernel_bytes: bytes,
                    gvt_ops: 0,
                    dual_gap,
                    note: None,
                });
                fits_run += 1;
            }
        }
    }

    if fits_run == 0 {
        bail!("memory budget excluded every requested size; nothing was benchmarked");
    }

    let mut writer: Box<dyn Write> = match out {
        Some(path) => Box::new(
            std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    let mut csv_writer = csv::Writer::from_writer(&mut writer);
    for row in &rows {
        csv_writer.serialize(row)?;
    }
    csv_writer.flush()?;
    drop(csv_writer);
    writer.flush()?;
    Ok(())
}
