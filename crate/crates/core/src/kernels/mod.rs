//! Pairwise kernels over (drug, target) pairs, expressed as sums of
//! index-permuted Kronecker products so that every kernel-vector product runs
//! through the vec-trick engine instead of an n x n matrix.
//!
//! Each variant lives behind the [`PairwiseKernel`] trait and is registered
//! by name; configuration files and the CLI select one at runtime.

pub mod base;
mod variants;

pub use variants::{
    AntiSymmetricKernel, CartesianKernel, KroneckerKernel, LinearKernel, MlpkKernel, Poly2dKernel,
    RankingKernel, SymmetricKernel,
};

use crate::error::{Error, Result};
use crate::gvt::GvtProblem;
use crate::matrix::DenseMatrix;
use crate::pairs::{relabel_compact, PairSample};

/// What a term's factor matrix resolves to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// The drug-drug base kernel matrix.
    Drug,
    /// The target-target base kernel matrix.
    Target,
    /// All-ones over the compact row/column id sets.
    Ones,
    /// delta(i = j) over the row/column object ids.
    Identity,
}

/// Which element of a pair feeds an index slot. The commutation operator P
/// swaps selectors and the unification operator Q duplicates one selector
/// into both slots, so any P/Q prefix or suffix of a term reduces to a
/// selector assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    First,
    Second,
}

impl Selector {
    #[inline]
    pub fn pick(self, pair: (usize, usize)) -> usize {
        match self {
            Selector::First => pair.0,
            Selector::Second => pair.1,
        }
    }
}

/// One summand of a pairwise kernel decomposition:
/// coefficient * R_out(row selectors) (left (x) right) R_in(col selectors)^T.
#[derive(Debug, Clone, Copy)]
pub struct KernelTerm {
    pub coefficient: f64,
    pub left_factor: Factor,
    pub right_factor: Factor,
    pub row_sel_left: Selector,
    pub row_sel_right: Selector,
    pub col_sel_left: Selector,
    pub col_sel_right: Selector,
}

/// A named pairwise kernel: its term list plus the homogeneity requirement.
#[derive(Debug, Clone)]
pub struct PairwiseKernelSpec {
    pub name: &'static str,
    pub terms: Vec<KernelTerm>,
    pub requires_homogeneous: bool,
}

/// A pairwise kernel variant. `terms` and `value` are two independent
/// computation routes for the same kernel; the test suite holds them against
/// each other.
pub trait PairwiseKernel: Send + Sync {
    fn name(&self) -> &'static str;

    /// True for kernels defined only when both pair elements share a domain.
    fn requires_homogeneous(&self) -> bool;

    /// The kernel as a sum of index-permuted Kronecker products.
    fn terms(&self) -> Vec<KernelTerm>;

    /// Direct evaluation of the defining kernel function. For homogeneous
    /// kernels the target matrix argument is ignored. Callers are expected
    /// to have bounds-checked the pair ids against the matrices.
    fn value(
        &self,
        drug: &DenseMatrix,
        target: &DenseMatrix,
        pair_a: (usize, usize),
        pair_b: (usize, usize),
    ) -> f64;

    fn spec(&self) -> PairwiseKernelSpec {
        PairwiseKernelSpec {
            name: self.name(),
            terms: self.terms(),
            requires_homogeneous: self.requires_homogeneous(),
        }
    }
}

/// All registered pairwise kernels, selectable by name.
pub static PAIRWISE_KERNELS: &[&dyn PairwiseKernel] = &[
    &LinearKernel,
    &Poly2dKernel,
    &KroneckerKernel,
    &CartesianKernel,
    &SymmetricKernel,
    &AntiSymmetricKernel,
    &RankingKernel,
    &MlpkKernel,
];

fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| *c != '-' && *c != '_')
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Registry lookup; accepts case and separator variations such as
/// `Anti-Symmetric` for `antisymmetric`.
pub fn pairwise_kernel(name: &str) -> Result<&'static dyn PairwiseKernel> {
    let wanted = normalize_name(name);
    PAIRWISE_KERNELS
        .iter()
        .copied()
        .find(|k| k.name() == wanted)
        .ok_or_else(|| Error::UnknownPairwiseKernel(name.to_string()))
}

/// Term-list decomposition of a kernel, by registry name.
pub fn decompose(name: &str) -> Result<PairwiseKernelSpec> {
    Ok(pairwise_kernel(name)?.spec())
}

/// Validated single kernel evaluation, used by the explicit reference path.
pub fn kernel_value(
    name: &str,
    drug: &DenseMatrix,
    target: Option<&DenseMatrix>,
    pair_a: (usize, usize),
    pair_b: (usize, usize),
) -> Result<f64> {
    let kernel = pairwise_kernel(name)?;
    if kernel.requires_homogeneous() && target.is_some() {
        return Err(Error::HomogeneityViolation(kernel.name()));
    }
    let t = target.unwrap_or(drug);
    for (id, bound, context) in [
        (pair_a.0, drug.rows(), "kernel value out drug id"),
        (pair_b.0, drug.cols(), "kernel value in drug id"),
        (pair_a.1, t.rows(), "kernel value out target id"),
        (pair_b.1, t.cols(), "kernel value in target id"),
    ] {
        if id >= bound {
            return Err(Error::IdOutOfRange {
                context,
                id,
                size: bound,
            });
        }
    }
    Ok(kernel.value(drug, t, pair_a, pair_b))
}

/// Output of a pairwise kernel matvec: the vector plus the exact multiply-add
/// count spent inside the vec-trick engine.
#[derive(Debug, Clone)]
pub struct PairwiseProduct {
    pub values: Vec<f64>,
    pub gvt_ops: u64,
}

struct CompiledTerm {
    coefficient: f64,
    a: DenseMatrix,
    b: DenseMatrix,
    out_first: Vec<usize>,
    out_second: Vec<usize>,
    in_first: Vec<usize>,
    in_second: Vec<usize>,
}

/// A pairwise kernel bound to concrete base kernel matrices and samples:
/// every term has been compacted and gathered so repeated matvecs (one per
/// solver iteration) do no per-call set-up work.
pub struct CompiledPairwiseOp {
    terms: Vec<CompiledTerm>,
    n_out: usize,
    n_in: usize,
}

fn select_ids(sample: &PairSample, sel: Selector) -> Vec<usize> {
    match sel {
        Selector::First => sample.first_ids().to_vec(),
        Selector::Second => sample.second_ids().to_vec(),
    }
}

fn gather(
    factor: Factor,
    drug: &DenseMatrix,
    target: &DenseMatrix,
    row_ids: &[usize],
    col_ids: &[usize],
) -> Result<DenseMatrix> {
    match factor {
        Factor::Ones => Ok(DenseMatrix::ones(row_ids.len(), col_ids.len())),
        Factor::Identity => {
            let mut m = DenseMatrix::zeros(row_ids.len(), col_ids.len());
            for (r, &ri) in row_ids.iter().enumerate() {
                for (c, &ci) in col_ids.iter().enumerate() {
                    if ri == ci {
                        m.set(r, c, 1.0);
                    }
                }
            }
            Ok(m)
        }
        Factor::Drug | Factor::Target => {
            let source = if factor == Factor::Drug { drug } else { target };
            if let Some(&id) = row_ids.iter().find(|&&id| id >= source.rows()) {
                return Err(Error::IdOutOfRange {
                    context: "factor row id",
                    id,
                    size: source.rows(),
                });
            }
            if let Some(&id) = col_ids.iter().find(|&&id| id >= source.cols()) {
                return Err(Error::IdOutOfRange {
                    context: "factor col id",
                    id,
                    size: source.cols(),
                });
            }
            let mut m = DenseMatrix::zeros(row_ids.len(), col_ids.len());
            for (r, &ri) in row_ids.iter().enumerate() {
                for (c, &ci) in col_ids.iter().enumerate() {
                    m.set(r, c, source.get(ri, ci));
                }
            }
            Ok(m)
        }
    }
}

fn check_homogeneity(
    kernel: &dyn PairwiseKernel,
    target: Option<&DenseMatrix>,
    out_sample: &PairSample,
    in_sample: &PairSample,
) -> Result<()> {
    if kernel.requires_homogeneous()
        && (target.is_some() || !out_sample.is_homogeneous() || !in_sample.is_homogeneous())
    {
        return Err(Error::HomogeneityViolation(kernel.name()));
    }
    if target.is_none() && !(out_sample.is_homogeneous() && in_sample.is_homogeneous()) {
        return Err(Error::MissingTargetKernel);
    }
    Ok(())
}

/// Homogeneity and id-bounds validation shared by the fast and explicit
/// routes: every drug id must index the drug matrix and every target id the
/// target matrix (the drug matrix doubles as both for homogeneous samples).
pub fn kernel_bounds_check(
    kernel: &dyn PairwiseKernel,
    drug: &DenseMatrix,
    target: Option<&DenseMatrix>,
    out_sample: &PairSample,
    in_sample: &PairSample,
) -> Result<()> {
    check_homogeneity(kernel, target, out_sample, in_sample)?;
    let t = target.unwrap_or(drug);
    let checks: [(&[usize], usize, &'static str); 4] = [
        (out_sample.first_ids(), drug.rows(), "out sample drug id"),
        (in_sample.first_ids(), drug.cols(), "in sample drug id"),
        (out_sample.second_ids(), t.rows(), "out sample target id"),
        (in_sample.second_ids(), t.cols(), "in sample target id"),
    ];
    for (ids, bound, context) in checks {
        if let Some(&id) = ids.iter().find(|&&id| id >= bound) {
            return Err(Error::IdOutOfRange {
                context,
                id,
                size: bound,
            });
        }
    }
    Ok(())
}

impl CompiledPairwiseOp {
    /// Resolve every term of `kernel` against the given matrices and samples.
    /// Row ids come from the out sample through the term's row selectors and
    /// column ids from the in sample through its column selectors, each
    /// compacted so the vec-trick inner loops cover unique objects only.
    pub fn compile(
        kernel: &dyn PairwiseKernel,
        drug: &DenseMatrix,
        target: Option<&DenseMatrix>,
        out_sample: &PairSample,
        in_sample: &PairSample,
    ) -> Result<Self> {
        kernel_bounds_check(kernel, drug, target, out_sample, in_sample)?;
        let target = target.unwrap_or(drug);
        let terms = kernel
            .terms()
            .into_iter()
            .map(|t| {
                let row_left = relabel_compact(&select_ids(out_sample, t.row_sel_left));
                let row_right = relabel_compact(&select_ids(out_sample, t.row_sel_right));
                let col_left = relabel_compact(&select_ids(in_sample, t.col_sel_left));
                let col_right = relabel_compact(&select_ids(in_sample, t.col_sel_right));
                let a = gather(
                    t.left_factor,
                    drug,
                    target,
                    &row_left.unique,
                    &col_left.unique,
                )?;
                let b = gather(
                    t.right_factor,
                    drug,
                    target,
                    &row_right.unique,
                    &col_right.unique,
                )?;
                Ok(CompiledTerm {
                    coefficient: t.coefficient,
                    a,
                    b,
                    out_first: row_left.compact,
                    out_second: row_right.compact,
                    in_first: col_left.compact,
                    in_second: col_right.compact,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            terms,
            n_out: out_sample.len(),
            n_in: in_sample.len(),
        })
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    /// Sum of per-term vec-trick products, term order fixed.
    pub fn matvec(&self, v: &[f64]) -> Result<PairwiseProduct> {
        if v.len() != self.n_in {
            return Err(Error::LengthMismatch {
                context: "pairwise matvec input",
                expected: self.n_in,
                got: v.len(),
            });
        }
        let mut values = vec![0.0; self.n_out];
        let mut gvt_ops = 0u64;
        for t in &self.terms {
            let problem = GvtProblem::new(
                &t.a,
                &t.b,
                &t.out_first,
                &t.out_second,
                &t.in_first,
                &t.in_second,
            )?;
            let product = problem.matvec(v, None)?;
            gvt_ops += product.ops;
            for (acc, x) in values.iter_mut().zip(&product.values) {
                *acc += t.coefficient * x;
            }
        }
        Ok(PairwiseProduct { values, gvt_ops })
    }
}

/// One-shot kernel matvec: compile the term list for the given samples and
/// multiply. Long-running callers (the solver) compile once and reuse.
pub fn pairwise_matvec(
    kernel: &dyn PairwiseKernel,
    drug: &DenseMatrix,
    target: Option<&DenseMatrix>,
    out_sample: &PairSample,
    in_sample: &PairSample,
    v: &[f64],
) -> Result<PairwiseProduct> {
    CompiledPairwiseOp::compile(kernel, drug, target, out_sample, in_sample)?.matvec(v)
}
