//! Experiment configuration: a TOML document with a fixed field set.
//! Unknown fields are rejected so a config cannot silently drift from what
//! actually ran.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use kronvec::eval::Setting;
use kronvec::kernels::base::{base_kernel_by_name, BaseKernel};
use kronvec::{pairwise_kernel, PairwiseKernel};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideDataKind {
    Features,
    PrecomputedKernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKernelKind {
    Linear,
    Gaussian,
    Tanimoto,
}

impl BaseKernelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BaseKernelKind::Linear => "linear",
            BaseKernelKind::Gaussian => "gaussian",
            BaseKernelKind::Tanimoto => "tanimoto",
        }
    }
}

fn default_folds() -> usize {
    9
}
fn default_lambda() -> f64 {
    1e-5
}
fn default_patience() -> usize {
    10
}
fn default_rel_tol() -> f64 {
    1e-8
}
fn default_inner_fraction() -> f64 {
    0.75
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub interactions: PathBuf,
    pub drug_side: PathBuf,
    /// Omit (or repeat the drug-side path) for homogeneous data.
    pub target_side: Option<PathBuf>,
    pub side_data_kind: SideDataKind,
    /// Required for feature side data; not accepted for precomputed kernels.
    pub base_kernel: Option<BaseKernelKind>,
    /// Gaussian bandwidth; present iff `base_kernel = "gaussian"`.
    pub gamma: Option<f64>,
    pub pairwise_kernel: String,
    pub setting: u8,
    #[serde(default = "default_folds")]
    pub folds: usize,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_patience")]
    pub patience: usize,
    /// Defaults to the training slice size.
    pub max_iter: Option<usize>,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_inner_fraction")]
    pub inner_fraction: f64,
    #[serde(default)]
    pub seed: u64,
    pub output: PathBuf,
}

pub struct ValidatedExperiment {
    pub config: ExperimentConfig,
    pub kernel: &'static dyn PairwiseKernel,
    pub base: Option<Box<dyn BaseKernel>>,
    pub setting: Setting,
    pub homogeneous_layout: bool,
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let config: ExperimentConfig =
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
    Ok(config)
}

pub fn validate(config: ExperimentConfig) -> Result<ValidatedExperiment> {
    let setting = Setting::from_u8(config.setting)?;
    let kernel = pairwise_kernel(&config.pairwise_kernel)?;

    let homogeneous_layout = match &config.target_side {
        None => true,
        Some(t) => t == &config.drug_side,
    };
    if kernel.requires_homogeneous() && !homogeneous_layout {
        bail!("homogeneous kernel requires shared object table");
    }

    match (config.base_kernel, config.gamma) {
        (Some(BaseKernelKind::Gaussian), None) => bail!("gaussian base kernel requires gamma"),
        (Some(BaseKernelKind::Gaussian), Some(g)) if g <= 0.0 => {
            bail!("gamma must be positive, got {g}")
        }
        (Some(k), Some(_)) if k != BaseKernelKind::Gaussian => {
            bail!("gamma is only valid with the gaussian base kernel")
        }
        (None, Some(_)) => bail!("gamma is only valid with the gaussian base kernel"),
        _ => {}
    }

    let base = match config.side_data_kind {
        SideDataKind::Features => {
            let kind = config
                .base_kernel
                .ok_or_else(|| anyhow::anyhow!("feature side data requires base_kernel"))?;
            Some(base_kernel_by_name(kind.as_str(), config.gamma)?)
        }
        SideDataKind::PrecomputedKernel => {
            if config.base_kernel.is_some() {
                bail!("precomputed-kernel side data does not take base_kernel");
            }
            None
        }
    };

    if config.folds < 2 {
        bail!("folds must be at least 2, got {}", config.folds);
    }
    if !(config.inner_fraction > 0.0 && config.inner_fraction < 1.0) {
        bail!("inner_fraction must lie strictly between 0 and 1");
    }

    Ok(ValidatedExperiment {
        config,
        kernel,
        base,
        setting,
        homogeneous_layout,
    })
}
