//! Base kernels over single-object feature vectors: linear, Gaussian and
//! Tanimoto (MinMax). Each variant sits behind the `BaseKernel` trait so the
//! CLI can select one by name.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// An object-object kernel computed from explicit feature rows.
pub trait BaseKernel: Send + Sync {
    fn name(&self) -> &'static str;

    /// Kernel matrix between the rows of `x` and the rows of `y`.
    fn compute(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix>;
}

fn check_feature_dims(x: &DenseMatrix, y: &DenseMatrix) -> Result<()> {
    if x.cols() != y.cols() {
        return Err(Error::FeatureDimensionMismatch {
            left: x.cols(),
            right: y.cols(),
        });
    }
    Ok(())
}

/// `K[i,j] = <x_i, y_j>`
pub fn linear_base_kernel(x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
    check_feature_dims(x, y)?;
    let mut k = DenseMatrix::zeros(x.rows(), y.rows());
    for i in 0..x.rows() {
        let xi = x.row(i);
        for j in 0..y.rows() {
            let yj = y.row(j);
            let mut acc = 0.0;
            for (a, b) in xi.iter().zip(yj) {
                acc += a * b;
            }
            k.set(i, j, acc);
        }
    }
    Ok(k)
}

/// `K[i,j] = exp(-gamma * ||x_i - y_j||^2)`, squared Euclidean distance.
pub fn gaussian_base_kernel(x: &DenseMatrix, y: &DenseMatrix, gamma: f64) -> Result<DenseMatrix> {
    if !(gamma > 0.0) {
        return Err(Error::NonPositiveGamma(gamma));
    }
    check_feature_dims(x, y)?;
    let mut k = DenseMatrix::zeros(x.rows(), y.rows());
    for i in 0..x.rows() {
        let xi = x.row(i);
        for j in 0..y.rows() {
            let yj = y.row(j);
            let mut sq = 0.0;
            for (a, b) in xi.iter().zip(yj) {
                let d = a - b;
                sq += d * d;
            }
            k.set(i, j, (-gamma * sq).exp());
        }
    }
    Ok(k)
}

/// `K[i,j] = sum_k min(x_ik, y_jk) / sum_k max(x_ik, y_jk)` over binary rows;
/// two all-zero vectors score 1.
pub fn tanimoto_base_kernel(x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
    check_feature_dims(x, y)?;
    for (m, label) in [(x, "left"), (y, "right")] {
        for i in 0..m.rows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != 0.0 && v != 1.0 {
                    let _ = label;
                    return Err(Error::NonBinaryEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
    }
    let mut k = DenseMatrix::zeros(x.rows(), y.rows());
    for i in 0..x.rows() {
        let xi = x.row(i);
        for j in 0..y.rows() {
            let yj = y.row(j);
            let mut min_sum = 0.0;
            let mut max_sum = 0.0;
            for (a, b) in xi.iter().zip(yj) {
                min_sum += a.min(*b);
                max_sum += a.max(*b);
            }
            let value = if max_sum == 0.0 {
                1.0
            } else {
                min_sum / max_sum
            };
            k.set(i, j, value);
        }
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LinearBase;

impl BaseKernel for LinearBase {
    fn name(&self) -> &'static str {
        "linear"
    }
    fn compute(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
        linear_base_kernel(x, y)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GaussianBase {
    gamma: f64,
}

impl GaussianBase {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) {
            return Err(Error::NonPositiveGamma(gamma));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl BaseKernel for GaussianBase {
    fn name(&self) -> &'static str {
        "gaussian"
    }
    fn compute(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
        gaussian_base_kernel(x, y, self.gamma)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TanimotoBase;

impl BaseKernel for TanimotoBase {
    fn name(&self) -> &'static str {
        "tanimoto"
    }
    fn compute(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
        tanimoto_base_kernel(x, y)
    }
}

/// Construct a base kernel by name. `gamma` is required for `gaussian` and
/// rejected elsewhere.
pub fn base_kernel_by_name(name: &str, gamma: Option<f64>) -> Result<Box<dyn BaseKernel>> {
    match (name.to_ascii_lowercase().as_str(), gamma) {
        ("linear", None) => Ok(Box::new(LinearBase)),
        ("tanimoto", None) => Ok(Box::new(TanimotoBase)),
        ("gaussian", Some(g)) => Ok(Box::new(GaussianBase::new(g)?)),
        ("gaussian", None) => Err(Error::UnknownBaseKernel(
            "gaussian requires a gamma value".to_string(),
        )),
        (other, Some(_)) if other == "linear" || other == "tanimoto" => Err(
            Error::UnknownBaseKernel(format!("{other} does not take gamma")),
        ),
        (other, _) => Err(Error::UnknownBaseKernel(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, v: &[f64]) -> DenseMatrix {
        DenseMatrix::new(rows, cols, v.to_vec()).unwrap()
    }

    #[test]
    fn linear_examples() {
        let eye = m(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let k = linear_base_kernel(&eye, &eye).unwrap();
        assert_eq!(k.values(), &[1.0, 0.0, 0.0, 1.0]);

        let k = linear_base_kernel(&m(1, 2, &[1.0, 2.0]), &m(1, 2, &[3.0, 4.0])).unwrap();
        assert_eq!(k.get(0, 0), 11.0);

        assert!(linear_base_kernel(&m(1, 2, &[0.0; 2]), &m(1, 3, &[0.0; 3])).is_err());
    }

    #[test]
    fn linear_matches_scalar_loop() {
        // fixed pseudo-random entries
        let x = m(3, 2, &[0.17, 0.82, 0.45, 0.09, 0.66, 0.31]);
        let y = m(2, 2, &[0.58, 0.23, 0.91, 0.74]);
        let k = linear_base_kernel(&x, &y).unwrap();
        for i in 0..3 {
            for j in 0..2 {
                let expect = x.get(i, 0) * y.get(j, 0) + x.get(i, 1) * y.get(j, 1);
                assert!((k.get(i, j) - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn gaussian_examples() {
        let x = m(2, 2, &[0.3, -0.1, 1.5, 2.0]);
        let k = gaussian_base_kernel(&x, &x, 1e-5).unwrap();
        assert_eq!(k.get(0, 0), 1.0);
        assert_eq!(k.get(1, 1), 1.0);

        let k = gaussian_base_kernel(&m(1, 1, &[0.0]), &m(1, 1, &[1.0]), 1.0).unwrap();
        assert!((k.get(0, 0) - (-1.0f64).exp()).abs() < 1e-15);

        assert!(gaussian_base_kernel(&x, &x, 0.0).is_err());
        assert!(gaussian_base_kernel(&x, &x, -2.0).is_err());
    }

    #[test]
    fn gaussian_matches_scalar_loop() {
        let x = m(3, 2, &[0.11, 0.95, 0.42, 0.77, 0.03, 0.64]);
        let gamma = 1e-5;
        let k = gaussian_base_kernel(&x, &x, gamma).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let d0 = x.get(i, 0) - x.get(j, 0);
                let d1 = x.get(i, 1) - x.get(j, 1);
                let expect = (-gamma * (d0 * d0 + d1 * d1)).exp();
                assert!((k.get(i, j) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tanimoto_examples() {
        let k =
            tanimoto_base_kernel(&m(1, 3, &[1.0, 1.0, 0.0]), &m(1, 3, &[1.0, 0.0, 1.0])).unwrap();
        assert!((k.get(0, 0) - 1.0 / 3.0).abs() < 1e-15);

        let v = m(1, 3, &[1.0, 0.0, 1.0]);
        assert_eq!(tanimoto_base_kernel(&v, &v).unwrap().get(0, 0), 1.0);

        // all-zero convention
        let z = m(1, 2, &[0.0, 0.0]);
        assert_eq!(tanimoto_base_kernel(&z, &z).unwrap().get(0, 0), 1.0);

        assert!(tanimoto_base_kernel(&m(1, 1, &[0.5]), &z).is_err());
    }

    #[test]
    fn construction_by_name() {
        assert_eq!(
            base_kernel_by_name("linear", None).unwrap().name(),
            "linear"
        );
        assert_eq!(
            base_kernel_by_name("gaussian", Some(1e-5)).unwrap().name(),
            "gaussian"
        );
        assert!(base_kernel_by_name("gaussian", None).is_err());
        assert!(base_kernel_by_name("linear", Some(0.1)).is_err());
        assert!(base_kernel_by_name("rbf", None).is_err());
    }
}
