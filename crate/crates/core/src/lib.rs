//! Pairwise kernel learning in O(nm + nq) per solver iteration.
//!
//! Kernel ridge regression over (drug, target) pairs normally needs the
//! n x n pairwise kernel matrix. This crate instead expresses every
//! supported pairwise kernel as a short sum of index-permuted Kronecker
//! products of the small drug-drug and target-target base kernels, and
//! multiplies each summand with vectors through the generalized vec trick,
//! so the n x n pairwise kernel matrix is never materialized.
//!
//! The pieces:
//!
//! - [`gvt`]: the sampled Kronecker product matvec with an exact
//!   multiply-add counter.
//! - [`kernels`]: base kernels (linear, Gaussian, Tanimoto) and the eight
//!   pairwise kernel variants behind the [`kernels::PairwiseKernel`] trait,
//!   registered by name.
//! - [`oracle`]: the brute-force explicit kernel matrix, kept as an
//!   independent reference path.
//! - [`solver`]: MINRES over matrix-free ridge operators, with snapshot
//!   hooks for validation-based early stopping.
//! - [`eval`]: AUC, the four train/test split settings, cross-validation
//!   and synthetic parity-grid data.

pub mod dataset;
pub mod error;
pub mod eval;
pub mod gvt;
pub mod kernels;
pub mod matrix;
pub mod oracle;
pub mod pairs;
pub mod solver;

pub use dataset::{validate_dataset, Dataset, SideData, ValidationReport};
pub use error::{Error, Result};
pub use gvt::{gvt_cost, GvtProblem, GvtProduct, GvtVariant};
pub use kernels::{
    decompose, kernel_value, pairwise_kernel, pairwise_matvec, CompiledPairwiseOp, Factor,
    KernelTerm, PairwiseKernel, PairwiseKernelSpec, PairwiseProduct, Selector, PAIRWISE_KERNELS,
};
pub use matrix::DenseMatrix;
pub use oracle::{build_explicit, explicit_matvec, ExplicitKernelMatrix};
pub use pairs::{relabel_compact, CompactIds, PairSample};
pub use solver::{
    fit_early_stopping, minres_solve, ridge_fit, EarlyStopOutcome, EarlyStopTracker,
    ExplicitRidgeOperator, MinresOutcome, Model, RidgeOperator, SolveStats, StopReason,
    SymmetricOperator,
};
