use crate::error::{Error, Result};

/// Row-major dense matrix of f64 values.
///
/// Base kernel matrices are small (`m x m`, `q x q` with m, q well below the
/// number of training pairs), so a flat dense buffer is the right storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

/// Relative tolerance used when deciding whether a matrix counts as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::BadMatrixShape {
                rows,
                cols,
                got: values.len(),
            });
        }
        Ok(Self { rows, cols, values })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            values: vec![0.0; rows * cols],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            values: vec![1.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.values[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.values[row * self.cols + col] = value;
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.cols..(row + 1) * self.cols]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Bytes held by the value buffer; used by the benchmark memory accounting.
    pub fn value_bytes(&self) -> u64 {
        self.values.len() as u64 * std::mem::size_of::<f64>() as u64
    }

    /// First entry pair violating `|M[i,j] - M[j,i]| <= tol * max(1, |M[i,j]|)`,
    /// or None when the matrix is symmetric under that rule.
    pub fn symmetry_violation(&self, tol: f64) -> Option<(usize, usize)> {
        if self.rows != self.cols {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let a = self.get(i, j);
                let b = self.get(j, i);
                if (a - b).abs() > tol * a.abs().max(1.0) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_violation(SYMMETRY_TOL).is_none()
    }

    /// Plain dense matrix-vector product.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                context: "dense matvec",
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![0.0; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let row = self.row(i);
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(v) {
                acc += a * b;
            }
            *o = acc;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_is_checked() {
        assert!(DenseMatrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::new(2, 2, vec![1.0; 4]).is_ok());
        assert!(DenseMatrix::new(0, 3, vec![]).is_ok());
    }

    #[test]
    fn symmetry_rule() {
        let sym = DenseMatrix::new(2, 2, vec![1.0, 2.0, 2.0, 3.0]).unwrap();
        assert!(sym.is_symmetric());

        let asym = DenseMatrix::new(2, 2, vec![1.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(asym.symmetry_violation(SYMMETRY_TOL), Some((0, 1)));

        // Large entries get a relative allowance.
        let almost = DenseMatrix::new(2, 2, vec![1.0, 1e9, 1e9 + 1e-4, 3.0]).unwrap();
        assert!(almost.is_symmetric());
    }

    #[test]
    fn matvec_matches_hand_computation() {
        let m = DenseMatrix::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let u = m.matvec(&[1.0, 0.0, -1.0]).unwrap();
        assert_eq!(u, vec![-2.0, -2.0]);
        assert!(m.matvec(&[1.0, 2.0]).is_err());
    }
}
