//! Minimal end-to-end fit: Kronecker kernel over linear base kernels on a
//! 2x2 grid, matching the README walkthrough.

use std::sync::Arc;

use kronvec::kernels::base::linear_base_kernel;
use kronvec::{pairwise_kernel, ridge_fit, DenseMatrix, PairSample};

fn main() -> kronvec::Result<()> {
    let drug_features = DenseMatrix::new(2, 2, vec![1.0, 0.0, 1.0, 1.0])?;
    let target_features = DenseMatrix::new(2, 2, vec![1.0, 1.0, 1.0, 0.0])?;
    let drug = Arc::new(linear_base_kernel(&drug_features, &drug_features)?);
    let target = Arc::new(linear_base_kernel(&target_features, &target_features)?);

    let train = PairSample::new(
        vec![0, 0, 1, 1],
        vec![0, 1, 0, 1],
        Some(vec![1.0, 0.0, 0.0, 1.0]),
        false,
    )?;
    let (model, stats) = ridge_fit(
        pairwise_kernel("kronecker")?,
        drug,
        Some(target),
        &train,
        1e-5,
        None,
        1e-8,
    )?;
    let scores = model.predict(&train)?;
    println!(
        "{scores:?} in {} iterations, {} multiply-adds",
        stats.iterations, stats.gvt_ops
    );
    Ok(())
}
