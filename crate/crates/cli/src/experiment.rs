//! Dataset assembly from config paths and the `run` subcommand: execute the
//! cross-validation protocol and write a line-delimited results document.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use kronvec::eval::{cross_validate, CvOptions, CvReport, Setting};
use kronvec::{validate_dataset, Dataset, SideData};
use serde::Serialize;

use crate::config::{SideDataKind, ValidatedExperiment};
use crate::data::{read_features, read_interactions, read_kernel, ObjectTable};

fn read_side(kind: SideDataKind, path: &Path) -> Result<(ObjectTable, SideData)> {
    Ok(match kind {
        SideDataKind::Features => {
            let (table, m) = read_features(path)?;
            (table, SideData::Features(m))
        }
        SideDataKind::PrecomputedKernel => {
            let (table, k) = read_kernel(path)?;
            (table, SideData::PrecomputedKernel(k))
        }
    })
}

/// Load interactions and side data into a numeric dataset. A shared object
/// table (homogeneous layout) makes both interaction columns index the
/// drug-side table.
pub fn load_dataset(exp: &ValidatedExperiment) -> Result<Dataset> {
    let config = &exp.config;
    let dataset = if exp.homogeneous_layout {
        let (table, side) = read_side(config.side_data_kind, &config.drug_side)?;
        let pairs = read_interactions(&config.interactions, &table, &table, true)?;
        Dataset {
            pairs,
            drug_side: side,
            target_side: None,
        }
    } else {
        let target_path = config
            .target_side
            .as_ref()
            .expect("heterogeneous layout has a target side");
        let (drug_table, drug_side) = read_side(config.side_data_kind, &config.drug_side)?;
        let (target_table, target_side) = read_side(config.side_data_kind, target_path)?;
        let pairs = read_interactions(&config.interactions, &drug_table, &target_table, false)?;
        Dataset {
            pairs,
            drug_side,
            target_side: Some(target_side),
        }
    };
    let report = validate_dataset(&dataset);
    if !report.is_ok() {
        bail!("invalid dataset: {}", report.violations.join("; "));
    }
    Ok(dataset)
}

#[derive(Serialize)]
struct ConfigRecord<'a> {
    record: &'static str,
    interactions: String,
    drug_side: String,
    target_side: Option<String>,
    side_data_kind: SideDataKind,
    base_kernel: Option<&'static str>,
    gamma: Option<f64>,
    pairwise_kernel: &'a str,
    setting: u8,
    folds: usize,
    lambda: f64,
    patience: usize,
    max_iter: Option<usize>,
    rel_tol: f64,
    inner_fraction: f64,
    seed: u64,
    jobs: usize,
}

#[derive(Serialize)]
struct FoldLine<'a> {
    record: &'static str,
    fold: usize,
    auc: Option<f64>,
    iterations: usize,
    train_ms: f64,
    gvt_ops: u64,
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct AggregateLine {
    record: &'static str,
    folds_evaluated: usize,
    mean_auc: Option<f64>,
    std_auc: Option<f64>,
    total_gvt_ops: u64,
    total_train_ms: f64,
}

fn write_results(
    path: &Path,
    exp: &ValidatedExperiment,
    jobs: usize,
    report: &CvReport,
) -> Result<()> {
    let config = &exp.config;
    let mut out = std::fs::File::create(path)
        .with_context(|| format!("creating results file {}", path.display()))?;
    let config_line = ConfigRecord {
        record: "config",
        interactions: config.interactions.display().to_string(),
        drug_side: config.drug_side.display().to_string(),
        target_side: config.target_side.as_ref().map(|p| p.display().to_string()),
        side_data_kind: config.side_data_kind,
        base_kernel: config.base_kernel.map(|k| k.as_str()),
        gamma: config.gamma,
        pairwise_kernel: exp.kernel.name(),
        setting: config.setting,
        folds: config.folds,
        lambda: config.lambda,
        patience: config.patience,
        max_iter: config.max_iter,
        rel_tol: config.rel_tol,
        inner_fraction: config.inner_fraction,
        seed: config.seed,
        jobs,
    };
    writeln!(out, "{}", serde_json::to_string(&config_line)?)?;
    for fold in &report.folds {
        let line = FoldLine {
            record: "fold",
            fold: fold.fold,
            auc: fold.auc,
            iterations: fold.iterations,
            train_ms: fold.train_ms,
            gvt_ops: fold.gvt_ops,
            note: fold.note.as_deref(),
        };
        writeln!(out, "{}", serde_json::to_string(&line)?)?;
    }
    let aggregate = AggregateLine {
        record: "aggregate",
        folds_evaluated: report.folds.iter().filter(|f| f.auc.is_some()).count(),
        mean_auc: report.mean_auc,
        std_auc: report.std_auc,
        total_gvt_ops: report.folds.iter().map(|f| f.gvt_ops).sum(),
        total_train_ms: report.folds.iter().map(|f| f.train_ms).sum(),
    };
    writeln!(out, "{}", serde_json::to_string(&aggregate)?)?;
    Ok(())
}

pub fn run_experiment(exp: &ValidatedExperiment, jobs: usize) -> Result<()> {
    let config = &exp.config;
    if exp.kernel.name() == "cartesian" && exp.setting != Setting::One {
        eprintln!(
            "warning: the cartesian kernel cannot generalize to unseen objects; setting {} holds objects out",
            config.setting
        );
    }
    let dataset = load_dataset(exp)?;
    let opts = CvOptions {
        setting: exp.setting,
        folds: config.folds,
        lambda: config.lambda,
        patience: config.patience,
        max_iter: config.max_iter,
        rel_tol: config.rel_tol,
        inner_fraction: config.inner_fraction,
        seed: config.seed,
        jobs,
    };
    let report = cross_validate(&dataset, exp.kernel, exp.base.as_deref(), &opts)?;
    write_results(&config.output, exp, jobs, &report)?;
    match (report.mean_auc, report.std_auc) {
        (Some(mean), Some(std)) => eprintln!(
            "{} setting {}: mean test AUC {mean:.4} +/- {std:.4} over {} folds -> {}",
            exp.kernel.name(),
            config.setting,
            report.folds.len(),
            config.output.display()
        ),
        _ => eprintln!(
            "{} setting {}: results written to {}",
            exp.kernel.name(),
            config.setting,
            config.output.display()
        ),
    }
    Ok(())
}
