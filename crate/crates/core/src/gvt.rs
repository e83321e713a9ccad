//! Generalized vec trick: multiply a doubly-indexed Kronecker product
//! `R_out (A (x) B) R_in^T` by a vector without materializing the n_out x n_in
//! matrix.
//!
//! Writing `of/os` for the out-sample id sequences and `if/is` for the
//! in-sample ones, the product is
//!
//! ```text
//! u[i] = sum_j A[of[i], if[j]] * B[os[i], is[j]] * v[j]
//! ```
//!
//! Two evaluation orders exist, differing only in which factor is folded into
//! the intermediate matrix first. Their exact multiply-add counts are
//!
//! ```text
//! variant 1: B.rows * n_in + A.cols * n_out
//! variant 2: A.rows * n_in + B.cols * n_out
//! ```
//!
//! so `auto` picks whichever is cheaper for the given shapes. Id sequences are
//! expected to be compact (see `relabel_compact`) so that the intermediate
//! loops run over unique objects only.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Which evaluation order to run. `One` folds B into the intermediate,
/// `Two` folds A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GvtVariant {
    One,
    Two,
}

/// A sampled Kronecker product ready to be multiplied by vectors.
///
/// `A` rows are indexed by the out-sample first-factor compact ids and its
/// columns by the in-sample ones; `B` likewise for the second factor.
#[derive(Debug)]
pub struct GvtProblem<'a> {
    a: &'a DenseMatrix,
    b: &'a DenseMatrix,
    out_first: &'a [usize],
    out_second: &'a [usize],
    in_first: &'a [usize],
    in_second: &'a [usize],
}

/// Result of one matvec: the output vector, the exact number of multiply-adds
/// executed, and the variant that ran.
#[derive(Debug, Clone)]
pub struct GvtProduct {
    pub values: Vec<f64>,
    pub ops: u64,
    pub variant: GvtVariant,
}

/// The two candidate multiply-add counts for given sample/factor sizes:
/// `(q_out*n_in + m_in*n_out, m_out*n_in + q_in*n_out)`.
pub fn gvt_cost(
    n_out: usize,
    m_out: usize,
    q_out: usize,
    n_in: usize,
    m_in: usize,
    q_in: usize,
) -> (u64, u64) {
    let variant1 = q_out as u64 * n_in as u64 + m_in as u64 * n_out as u64;
    let variant2 = m_out as u64 * n_in as u64 + q_in as u64 * n_out as u64;
    (variant1, variant2)
}

fn check_ids(ids: &[usize], bound: usize, context: &'static str) -> Result<()> {
    for &id in ids {
        if id >= bound {
            return Err(Error::IdOutOfRange {
                context,
                id,
                size: bound,
            });
        }
    }
    Ok(())
}

impl<'a> GvtProblem<'a> {
    pub fn new(
        a: &'a DenseMatrix,
        b: &'a DenseMatrix,
        out_first: &'a [usize],
        out_second: &'a [usize],
        in_first: &'a [usize],
        in_second: &'a [usize],
    ) -> Result<Self> {
        if out_second.len() != out_first.len() {
            return Err(Error::LengthMismatch {
                context: "gvt out sample",
                expected: out_first.len(),
                got: out_second.len(),
            });
        }
        if in_second.len() != in_first.len() {
            return Err(Error::LengthMismatch {
                context: "gvt in sample",
                expected: in_first.len(),
                got: in_second.len(),
            });
        }
        check_ids(out_first, a.rows(), "gvt out first ids vs A rows")?;
        check_ids(in_first, a.cols(), "gvt in first ids vs A cols")?;
        check_ids(out_second, b.rows(), "gvt out second ids vs B rows")?;
        check_ids(in_second, b.cols(), "gvt in second ids vs B cols")?;
        Ok(Self {
            a,
            b,
            out_first,
            out_second,
            in_first,
            in_second,
        })
    }

    pub fn n_out(&self) -> usize {
        self.out_first.len()
    }

    pub fn n_in(&self) -> usize {
        self.in_first.len()
    }

    /// Candidate multiply-add counts for this problem.
    pub fn cost(&self) -> (u64, u64) {
        gvt_cost(
            self.n_out(),
            self.a.rows(),
            self.b.rows(),
            self.n_in(),
            self.a.cols(),
            self.b.cols(),
        )
    }

    /// Number of intermediate reals a given variant allocates.
    pub fn intermediate_size(&self, variant: GvtVariant) -> usize {
        match variant {
            GvtVariant::One => self.b.rows() * self.a.cols(),
            GvtVariant::Two => self.a.rows() * self.b.cols(),
        }
    }

    fn pick_variant(&self) -> GvtVariant {
        let (c1, c2) = self.cost();
        // ties go to variant 1
        if c1 <= c2 {
            GvtVariant::One
        } else {
            GvtVariant::Two
        }
    }

    /// Multiply by `v`. `variant: None` selects the cheaper evaluation order.
    pub fn matvec(&self, v: &[f64], variant: Option<GvtVariant>) -> Result<GvtProduct> {
        if v.len() != self.n_in() {
            return Err(Error::LengthMismatch {
                context: "gvt matvec input",
                expected: self.n_in(),
                got: v.len(),
            });
        }
        let variant = variant.unwrap_or_else(|| self.pick_variant());
        let product = match variant {
            GvtVariant::One => self.matvec_variant1(v),
            GvtVariant::Two => self.matvec_variant2(v),
        };
        Ok(product)
    }

    // W[t,h] = sum_{j: if[j]=h} B[t, is[j]] * v[j], then
    // u[i] = sum_h A[of[i], h] * W[os[i], h].
    // Accumulation runs in ascending j, then ascending h, for determinism.
    fn matvec_variant1(&self, v: &[f64]) -> GvtProduct {
        let q_out = self.b.rows();
        let m_in = self.a.cols();
        let mut w = vec![0.0; q_out * m_in];
        for (j, &vj) in v.iter().enumerate() {
            let h = self.in_first[j];
            let s = self.in_second[j];
            for t in 0..q_out {
                w[t * m_in + h] += self.b.get(t, s) * vj;
            }
        }
        let mut u = vec![0.0; self.n_out()];
        for (i, ui) in u.iter_mut().enumerate() {
            let a_row = self.a.row(self.out_first[i]);
            let w_row = &w[self.out_second[i] * m_in..][..m_in];
            let mut acc = 0.0;
            for h in 0..m_in {
                acc += a_row[h] * w_row[h];
            }
            *ui = acc;
        }
        GvtProduct {
            values: u,
            ops: q_out as u64 * self.n_in() as u64 + m_in as u64 * self.n_out() as u64,
            variant: GvtVariant::One,
        }
    }

    // Mirror of variant 1 with the roles of A and B swapped:
    // W'[d,h'] = sum_{j: is[j]=h'} A[d, if[j]] * v[j], then
    // u[i] = sum_{h'} B[os[i], h'] * W'[of[i], h'].
    fn matvec_variant2(&self, v: &[f64]) -> GvtProduct {
        let m_out = self.a.rows();
        let q_in = self.b.cols();
        let mut w = vec![0.0; m_out * q_in];
        for (j, &vj) in v.iter().enumerate() {
            let h = self.in_second[j];
            let f = self.in_first[j];
            for d in 0..m_out {
                w[d * q_in + h] += self.a.get(d, f) * vj;
            }
        }
        let mut u = vec![0.0; self.n_out()];
        for (i, ui) in u.iter_mut().enumerate() {
            let b_row = self.b.row(self.out_second[i]);
            let w_row = &w[self.out_first[i] * q_in..][..q_in];
            let mut acc = 0.0;
            for h in 0..q_in {
                acc += b_row[h] * w_row[h];
            }
            *ui = acc;
        }
        GvtProduct {
            values: u,
            ops: m_out as u64 * self.n_in() as u64 + q_in as u64 * self.n_out() as u64,
            variant: GvtVariant::Two,
        }
    }
}
