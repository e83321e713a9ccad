//! Kernel ridge regression: solve (K + lambda I) a = y with the minimal
//! residual method over an abstract symmetric operator, so the pairwise
//! kernel matrix K is only ever touched through matvecs. Per-iteration
//! snapshots let a validation set pick the stopping iteration.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::dataset::require_labels;
use crate::error::{Error, Result};
use crate::eval::metrics::{auc, binarize_labels};
use crate::kernels::{CompiledPairwiseOp, PairwiseKernel};
use crate::matrix::DenseMatrix;
use crate::pairs::PairSample;

/// Lanczos beta below this is treated as breakdown: the Krylov space is
/// exhausted and the current iterate is the solution within it.
const BREAKDOWN_TOL: f64 = 1e-14;

/// A symmetric linear map. Symmetry ( <Au, w> = <u, Aw> ) is the caller's
/// responsibility; the solver assumes it.
pub trait SymmetricOperator {
    fn dimension(&self) -> usize;
    fn apply(&self, v: &[f64]) -> Vec<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Relative residual reached `rel_tol`.
    Converged,
    /// Iteration budget exhausted.
    MaxIterations,
    /// Lanczos breakdown; iterate returned as converged-by-breakdown.
    Breakdown,
    /// The snapshot callback asked to stop.
    StoppedByCallback,
}

#[derive(Debug, Clone)]
pub struct MinresOutcome {
    pub solution: Vec<f64>,
    /// Residual norm estimates; entry 0 is ||y||, then one entry per
    /// iteration. Non-increasing by construction of the method.
    pub residual_history: Vec<f64>,
    pub iterations: usize,
    pub stop: StopReason,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// MINRES with the zero vector as initial guess.
///
/// The `snapshot` callback sees (iteration, current iterate) once per
/// iteration, starting at iteration 1; returning `false` stops the run after
/// that iteration (used for validation-based early stopping).
pub fn minres_solve(
    op: &dyn SymmetricOperator,
    y: &[f64],
    max_iter: usize,
    rel_tol: f64,
    mut snapshot: impl FnMut(usize, &[f64]) -> bool,
) -> Result<MinresOutcome> {
    let n = op.dimension();
    if y.len() != n {
        return Err(Error::LengthMismatch {
            context: "minres right-hand side",
            expected: n,
            got: y.len(),
        });
    }

    let beta1 = norm(y);
    let mut history = vec![beta1];
    if beta1 == 0.0 || max_iter == 0 {
        return Ok(MinresOutcome {
            solution: vec![0.0; n],
            residual_history: history,
            iterations: 0,
            stop: if beta1 == 0.0 {
                StopReason::Converged
            } else {
                StopReason::MaxIterations
            },
        });
    }

    let mut x = vec![0.0; n];
    let mut v_prev = vec![0.0; n];
    let mut v: Vec<f64> = y.iter().map(|t| t / beta1).collect();
    let mut w_prev = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut beta = 0.0_f64;
    let mut eta = beta1;
    // Givens rotations of the two preceding iterations
    let (mut c_prev, mut c) = (1.0_f64, 1.0_f64);
    let (mut s_prev, mut s) = (0.0_f64, 0.0_f64);

    let mut iterations = 0;
    let mut stop = StopReason::MaxIterations;

    for k in 1..=max_iter {
        // Lanczos step
        let mut av = op.apply(&v);
        let alpha = dot(&v, &av);
        for i in 0..n {
            av[i] -= alpha * v[i] + beta * v_prev[i];
        }
        let beta_next = norm(&av);

        // Apply previous rotations to the new tridiagonal column, then form
        // the rotation annihilating beta_next.
        let rho1 = c * alpha - c_prev * s * beta;
        let rho2 = s * alpha + c_prev * c * beta;
        let rho3 = s_prev * beta;
        let denom = (rho1 * rho1 + beta_next * beta_next).sqrt();
        if denom < BREAKDOWN_TOL {
            stop = StopReason::Breakdown;
            break;
        }
        let c_next = rho1 / denom;
        let s_next = beta_next / denom;

        let mut w_next = vec![0.0; n];
        for i in 0..n {
            w_next[i] = (v[i] - rho3 * w_prev[i] - rho2 * w[i]) / denom;
            x[i] += c_next * eta * w_next[i];
        }
        eta = -s_next * eta;

        iterations = k;
        history.push(eta.abs());

        if beta_next > BREAKDOWN_TOL {
            v_prev = std::mem::replace(&mut v, av.iter().map(|t| t / beta_next).collect());
        }
        beta = beta_next;
        c_prev = c;
        c = c_next;
        s_prev = s;
        s = s_next;
        w_prev = std::mem::replace(&mut w, w_next);

        if !snapshot(k, &x) {
            stop = StopReason::StoppedByCallback;
            break;
        }
        if eta.abs() <= rel_tol * beta1 {
            stop = StopReason::Converged;
            break;
        }
        if beta_next <= BREAKDOWN_TOL {
            stop = StopReason::Breakdown;
            break;
        }
    }

    Ok(MinresOutcome {
        solution: x,
        residual_history: history,
        iterations,
        stop,
    })
}

/// (K + lambda I) over a training sample, with K applied through the
/// compiled vec-trick terms. Counts the multiply-adds spent in the engine.
pub struct RidgeOperator {
    op: CompiledPairwiseOp,
    lambda: f64,
    n: usize,
    ops: AtomicU64,
}

impl RidgeOperator {
    pub fn new(
        kernel: &dyn PairwiseKernel,
        drug: &DenseMatrix,
        target: Option<&DenseMatrix>,
        train: &PairSample,
        lambda: f64,
    ) -> Result<Self> {
        let op = CompiledPairwiseOp::compile(kernel, drug, target, train, train)?;
        Ok(Self {
            op,
            lambda,
            n: train.len(),
            ops: AtomicU64::new(0),
        })
    }

    pub fn gvt_ops(&self) -> u64 {
        self.ops.load(Ordering::Relaxed)
    }
}

impl SymmetricOperator for RidgeOperator {
    fn dimension(&self) -> usize {
        self.n
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut product = self
            .op
            .matvec(v)
            .expect("compiled operator dimension mismatch");
        self.ops.fetch_add(product.gvt_ops, Ordering::Relaxed);
        for (u, x) in product.values.iter_mut().zip(v) {
            *u += self.lambda * x;
        }
        product.values
    }
}

/// An explicit dense (K + lambda I); the baseline backend.
pub struct ExplicitRidgeOperator {
    pub kernel_matrix: DenseMatrix,
    pub lambda: f64,
}

impl SymmetricOperator for ExplicitRidgeOperator {
    fn dimension(&self) -> usize {
        self.kernel_matrix.rows()
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut u = self
            .kernel_matrix
            .matvec(v)
            .expect("explicit operator dimension mismatch");
        for (ui, x) in u.iter_mut().zip(v) {
            *ui += self.lambda * x;
        }
        u
    }
}

/// A fitted model in representer form: dual coefficients over the training
/// pairs, plus everything needed to score new pairs.
pub struct Model {
    pub dual: Vec<f64>,
    pub train_sample: PairSample,
    pub kernel: &'static dyn PairwiseKernel,
    pub drug: Arc<DenseMatrix>,
    pub target: Option<Arc<DenseMatrix>>,
    pub lambda: f64,
    pub iterations_used: usize,
}

/// Bookkeeping from one solve.
#[derive(Debug, Clone)]
pub struct SolveStats {
    pub iterations: usize,
    pub gvt_ops: u64,
    pub residual_history: Vec<f64>,
    pub stop: StopReason,
}

/// Solve (K + lambda I) a = y on the training sample. `max_iter` defaults to
/// the sample size; `rel_tol = 0` runs the full budget.
pub fn ridge_fit(
    kernel: &'static dyn PairwiseKernel,
    drug: Arc<DenseMatrix>,
    target: Option<Arc<DenseMatrix>>,
    train: &PairSample,
    lambda: f64,
    max_iter: Option<usize>,
    rel_tol: f64,
) -> Result<(Model, SolveStats)> {
    let y = require_labels(train, "ridge fit")?.to_vec();
    let op = RidgeOperator::new(kernel, &drug, target.as_deref(), train, lambda)?;
    let max_iter = max_iter.unwrap_or(train.len());
    let outcome = minres_solve(&op, &y, max_iter, rel_tol, |_, _| true)?;
    let stats = SolveStats {
        iterations: outcome.iterations,
        gvt_ops: op.gvt_ops(),
        residual_history: outcome.residual_history,
        stop: outcome.stop,
    };
    Ok((
        Model {
            dual: outcome.solution,
            train_sample: train.clone(),
            kernel,
            drug,
            target,
            lambda,
            iterations_used: stats.iterations,
        },
        stats,
    ))
}

impl Model {
    /// Scores for a new sample: one cross-sample kernel matvec against the
    /// dual vector.
    pub fn predict(&self, test_sample: &PairSample) -> Result<Vec<f64>> {
        Ok(self.predict_counted(test_sample)?.values)
    }

    /// Same as `predict`, also reporting the vec-trick op count.
    pub fn predict_counted(
        &self,
        test_sample: &PairSample,
    ) -> Result<crate::kernels::PairwiseProduct> {
        crate::kernels::pairwise_matvec(
            self.kernel,
            &self.drug,
            self.target.as_deref(),
            test_sample,
            &self.train_sample,
            &self.dual,
        )
    }
}

/// Patience-based stopping rule over a per-iteration score: stop after
/// `patience` consecutive iterations without strict improvement, remember the
/// earliest best.
pub struct EarlyStopTracker {
    patience: usize,
    best_score: f64,
    best_iteration: usize,
    streak: usize,
}

impl EarlyStopTracker {
    pub fn new(patience: usize) -> Result<Self> {
        if patience == 0 {
            return Err(Error::BadPatience);
        }
        Ok(Self {
            patience,
            best_score: f64::NEG_INFINITY,
            best_iteration: 0,
            streak: 0,
        })
    }

    /// Record the score at `iteration`; returns false when the run should stop.
    pub fn observe(&mut self, iteration: usize, score: f64) -> bool {
        if score > self.best_score {
            self.best_score = score;
            self.best_iteration = iteration;
            self.streak = 0;
        } else {
            self.streak += 1;
        }
        self.streak < self.patience
    }

    pub fn best_iteration(&self) -> usize {
        self.best_iteration
    }

    pub fn best_score(&self) -> f64 {
        self.best_score
    }
}

#[derive(Debug, Clone)]
pub struct EarlyStopOutcome {
    pub best_iterations: usize,
    pub best_validation_auc: f64,
    pub iterations_run: usize,
    pub gvt_ops: u64,
}

/// Run MINRES on the inner sample's ridge system, scoring the validation
/// sample by AUC at every iteration, and report the iteration count with the
/// best validation AUC (ties resolved to the earliest).
pub fn fit_early_stopping(
    kernel: &'static dyn PairwiseKernel,
    drug: &DenseMatrix,
    target: Option<&DenseMatrix>,
    inner: &PairSample,
    validation: &PairSample,
    lambda: f64,
    patience: usize,
    max_iter: Option<usize>,
    rel_tol: f64,
) -> Result<EarlyStopOutcome> {
    let y = require_labels(inner, "early stopping inner sample")?.to_vec();
    let val_labels = binarize_labels(require_labels(validation, "early stopping validation")?);
    if val_labels.iter().all(|&b| b) || val_labels.iter().all(|&b| !b) {
        return Err(Error::DegenerateValidationLabels);
    }

    let op = RidgeOperator::new(kernel, drug, target, inner, lambda)?;
    let cross = CompiledPairwiseOp::compile(kernel, drug, target, validation, inner)?;
    let cross_ops = AtomicU64::new(0);

    let mut tracker = EarlyStopTracker::new(patience)?;
    let max_iter = max_iter.unwrap_or(inner.len());
    let outcome = minres_solve(&op, &y, max_iter, rel_tol, |iteration, iterate| {
        let scores = cross
            .matvec(iterate)
            .expect("validation matvec dimension mismatch");
        cross_ops.fetch_add(scores.gvt_ops, Ordering::Relaxed);
        let val_auc = auc(&val_labels, &scores.values)
            .expect("validation class balance checked before solve");
        tracker.observe(iteration, val_auc)
    })?;

    Ok(EarlyStopOutcome {
        best_iterations: tracker.best_iteration(),
        best_validation_auc: tracker.best_score(),
        iterations_run: outcome.iterations,
        gvt_ops: op.gvt_ops() + cross_ops.load(Ordering::Relaxed),
    })
}
