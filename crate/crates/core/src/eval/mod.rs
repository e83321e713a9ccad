//! Evaluation: the AUC metric, setting-aware splitters, the cross-validation
//! harness and synthetic parity-grid data.

pub mod cv;
pub mod metrics;
pub mod split;
pub mod synthetic;

pub use cv::{cross_validate, resolve_base_matrices, CvOptions, CvReport, FoldRecord};
pub use metrics::{auc, binarize_labels};
pub use split::{inner_split, split_setting, Setting, SplitPlan};
pub use synthetic::{generate_synthetic, SyntheticPattern};
