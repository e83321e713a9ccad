//! Cross-validation harness: per fold, early-stop on an inner/validation
//! split, refit on the full training slice for the chosen iteration count,
//! then score the held-out test slice by AUC.

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::dataset::{Dataset, SideData};
use crate::error::{Error, Result};
use crate::eval::metrics::{auc, binarize_labels};
use crate::eval::split::{inner_split, split_setting, Setting};
use crate::kernels::base::BaseKernel;
use crate::kernels::PairwiseKernel;
use crate::matrix::DenseMatrix;
use crate::solver::{fit_early_stopping, ridge_fit};

#[derive(Debug, Clone)]
pub struct CvOptions {
    pub setting: Setting,
    pub folds: usize,
    pub lambda: f64,
    pub patience: usize,
    pub max_iter: Option<usize>,
    pub rel_tol: f64,
    pub inner_fraction: f64,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for CvOptions {
    fn default() -> Self {
        Self {
            setting: Setting::One,
            folds: 9,
            lambda: 1e-5,
            patience: 10,
            max_iter: None,
            rel_tol: 1e-8,
            inner_fraction: 0.75,
            seed: 0,
            jobs: 1,
        }
    }
}

/// Per-fold outcome. `auc` is absent for degenerate folds, with the reason
/// in `note`.
#[derive(Debug, Clone, Serialize)]
pub struct FoldRecord {
    pub fold: usize,
    pub auc: Option<f64>,
    pub iterations: usize,
    pub train_ms: f64,
    pub gvt_ops: u64,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CvReport {
    pub kernel: String,
    pub setting: u8,
    pub folds: Vec<FoldRecord>,
    pub mean_auc: Option<f64>,
    pub std_auc: Option<f64>,
}

/// Resolve the dataset's side data into base kernel matrices. Feature sides
/// go through `base`; precomputed sides are used as-is.
pub fn resolve_base_matrices(
    ds: &Dataset,
    base: Option<&dyn BaseKernel>,
) -> Result<(Arc<DenseMatrix>, Option<Arc<DenseMatrix>>)> {
    let resolve = |side: &SideData| -> Result<Arc<DenseMatrix>> {
        match side {
            SideData::Features(x) => {
                let base = base.ok_or(Error::MissingBaseKernel)?;
                Ok(Arc::new(base.compute(x, x)?))
            }
            SideData::PrecomputedKernel(k) => Ok(Arc::new(k.clone())),
        }
    };
    let drug = resolve(&ds.drug_side)?;
    let target = ds.target_side.as_ref().map(resolve).transpose()?;
    Ok((drug, target))
}

fn fold_seed(base: u64, fold: usize) -> u64 {
    base ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(fold as u64 + 1)
}

fn mean_and_std(values: &[f64]) -> (Option<f64>, Option<f64>) {
    if values.is_empty() {
        return (None, None);
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let std = if values.len() < 2 {
        None
    } else {
        let var =
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
        Some(var.sqrt())
    };
    (Some(mean), std)
}

fn run_fold(
    ds: &Dataset,
    kernel: &'static dyn PairwiseKernel,
    drug: &Arc<DenseMatrix>,
    target: &Option<Arc<DenseMatrix>>,
    opts: &CvOptions,
    fold: usize,
) -> Result<FoldRecord> {
    let start = Instant::now();
    let mut record = FoldRecord {
        fold,
        auc: None,
        iterations: 0,
        train_ms: 0.0,
        gvt_ops: 0,
        note: None,
    };

    let plan = split_setting(&ds.pairs, opts.setting, opts.folds, fold, opts.seed)?;

    // Degenerate folds (unsplittable slices, single-class labels, empty
    // slices) are reported per fold rather than failing the sweep.
    let mut evaluate = || -> std::result::Result<(), String> {
        let (inner_idx, val_idx) = inner_split(
            &ds.pairs,
            &plan.train,
            opts.setting,
            opts.inner_fraction,
            fold_seed(opts.seed, fold),
        )
        .map_err(|e| e.to_string())?;
        if inner_idx.is_empty() || val_idx.is_empty() || plan.test.is_empty() {
            return Err("empty inner, validation or test slice".to_string());
        }

        let inner = ds.pairs.subset(&inner_idx);
        let validation = ds.pairs.subset(&val_idx);
        let train = ds.pairs.subset(&plan.train);
        let test = ds.pairs.subset(&plan.test);

        let es = fit_early_stopping(
            kernel,
            drug,
            target.as_deref(),
            &inner,
            &validation,
            opts.lambda,
            opts.patience,
            opts.max_iter
                .map(|m| m.min(inner.len()))
                .or(Some(inner.len())),
            opts.rel_tol,
        )
        .map_err(|e| e.to_string())?;
        record.gvt_ops += es.gvt_ops;
        record.iterations = es.best_iterations;

        // refit on the full training slice for exactly the chosen iterations
        let (model, stats) = ridge_fit(
            kernel,
            drug.clone(),
            target.clone(),
            &train,
            opts.lambda,
            Some(es.best_iterations),
            0.0,
        )
        .map_err(|e| e.to_string())?;
        record.gvt_ops += stats.gvt_ops;

        let scored = model.predict_counted(&test).map_err(|e| e.to_string())?;
        record.gvt_ops += scored.gvt_ops;
        let labels = binarize_labels(test.labels().ok_or("test labels missing")?);
        let test_auc = auc(&labels, &scored.values).map_err(|e| e.to_string())?;
        record.auc = Some(test_auc);
        Ok(())
    };

    if let Err(note) = evaluate() {
        record.note = Some(note);
    }
    record.train_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(record)
}

/// Run the full fold sweep. Folds are independent; `opts.jobs > 1` runs them
/// on a local thread pool, with records always ordered by fold index.
pub fn cross_validate(
    ds: &Dataset,
    kernel: &'static dyn PairwiseKernel,
    base: Option<&dyn BaseKernel>,
    opts: &CvOptions,
) -> Result<CvReport> {
    let (drug, target) = resolve_base_matrices(ds, base)?;

    let folds: Vec<FoldRecord> = if opts.jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidDataset(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..opts.folds)
                .into_par_iter()
                .map(|fold| run_fold(ds, kernel, &drug, &target, opts, fold))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        (0..opts.folds)
            .map(|fold| run_fold(ds, kernel, &drug, &target, opts, fold))
            .collect::<Result<Vec<_>>>()?
    };

    let aucs: Vec<f64> = folds.iter().filter_map(|f| f.auc).collect();
    let (mean_auc, std_auc) = mean_and_std(&aucs);
    Ok(CvReport {
        kernel: kernel.name().to_string(),
        setting: opts.setting.as_u8(),
        folds,
        mean_auc,
        std_auc,
    })
}
