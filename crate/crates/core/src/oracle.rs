//! Brute-force reference path: build the full n_out x n_in pairwise kernel
//! matrix entry by entry from the kernel functions and multiply it directly.
//! Quadratic on purpose; it exists to check the vec-trick route and to serve
//! as the baseline backend for benchmarks.

use crate::error::Result;
use crate::kernels::PairwiseKernel;
use crate::matrix::DenseMatrix;
use crate::pairs::PairSample;

/// An explicitly materialized pairwise kernel matrix with its provenance.
#[derive(Debug, Clone)]
pub struct ExplicitKernelMatrix {
    pub matrix: DenseMatrix,
    pub kernel_name: &'static str,
    pub n_out: usize,
    pub n_in: usize,
}

/// Evaluate the kernel function for every (out pair, in pair) combination.
/// This path never touches the term decomposition, so it is an independent
/// witness for the fast route.
pub fn build_explicit(
    kernel: &dyn PairwiseKernel,
    drug: &DenseMatrix,
    target: Option<&DenseMatrix>,
    out_sample: &PairSample,
    in_sample: &PairSample,
) -> Result<ExplicitKernelMatrix> {
    crate::kernels::kernel_bounds_check(kernel, drug, target, out_sample, in_sample)?;
    let t = target.unwrap_or(drug);
    let n_out = out_sample.len();
    let n_in = in_sample.len();
    let mut matrix = DenseMatrix::zeros(n_out, n_in);
    for i in 0..n_out {
        let a = out_sample.pair(i);
        for j in 0..n_in {
            matrix.set(i, j, kernel.value(drug, t, a, in_sample.pair(j)));
        }
    }
    Ok(ExplicitKernelMatrix {
        matrix,
        kernel_name: kernel.name(),
        n_out,
        n_in,
    })
}

/// Plain dense matrix-vector product against the materialized kernel.
pub fn explicit_matvec(k: &ExplicitKernelMatrix, v: &[f64]) -> Result<Vec<f64>> {
    k.matrix.matvec(v)
}
