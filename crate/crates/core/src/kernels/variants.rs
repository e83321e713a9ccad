//! The eight pairwise kernel variants. Each one contributes two independent
//! computation routes: `terms()` gives its expansion as index-permuted
//! Kronecker products (driving the fast matvec), while `value()` evaluates
//! the defining formula directly (driving the explicit reference path).

use super::{Factor, KernelTerm, PairwiseKernel, Selector};
use crate::matrix::DenseMatrix;

use Factor::{Drug, Identity, Ones, Target};
use Selector::{First, Second};

fn term(
    coefficient: f64,
    left: Factor,
    right: Factor,
    row: (Selector, Selector),
    col: (Selector, Selector),
) -> KernelTerm {
    KernelTerm {
        coefficient,
        left_factor: left,
        right_factor: right,
        row_sel_left: row.0,
        row_sel_right: row.1,
        col_sel_left: col.0,
        col_sel_right: col.1,
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn ranking_value(d: &DenseMatrix, a: (usize, usize), b: (usize, usize)) -> f64 {
    d.get(a.0, b.0) - d.get(a.0, b.1) - d.get(a.1, b.0) + d.get(a.1, b.1)
}

/// k_D(d, d') + k_T(t, t'); operator form D(x)1 + 1(x)T.
#[derive(Debug, Clone, Copy)]
pub struct LinearKernel;

impl PairwiseKernel for LinearKernel {
    fn name(&self) -> &'static str {
        "linear"
    }
    fn requires_homogeneous(&self) -> bool {
        false
    }
    fn terms(&self) -> Vec<KernelTerm> {
        vec![
            term(1.0, Drug, Ones, (First, Second), (First, Second)),
            term(1.0, Ones, Target, (First, Second), (First, Second)),
        ]
    }
    fn value(&self, d: &DenseMatrix, t: &DenseMatrix, a: (usize, usize), b: (usize, usize)) -> f64 {
        d.get(a.0, b.0) + t.get(a.1, b.1)
    }
}

/// (k_D + k_T)^2; operator form Q(D(x)D)Q^T + 2 D(x)T + PQ(T(x)T)Q^T P.
#[derive(Debug, Clone, Copy)]
pub struct Poly2dKernel;

impl PairwiseKernel for Poly2dKernel {
    fn name(&self) -> &'static str {
        "poly2d"
    }
    fn requires_homogeneous(&self) -> bool {
        false
    }
    fn terms(&self) -> Vec<KernelTerm> {
        vec![
            term(1.0, Drug, Drug, (First, First), (First, First)),
            term(2.0, Drug, Target, (First, Second), (First, Second)),
            term(1.0, Target, Target, (Second, Second), (Second, Second)),
        ]
    }
    fn value(&self, d: &DenseMatrix, t: &DenseMatrix, a: (usize, usize), b: (usize, usize)) -> f64 {
        let s = d.get(a.0, b.0) + t.get(a.1, b.1);
        s * s
    }
}

/// k_D * k_T; operator form D(x)T.
#[derive(Debug, Clone, Copy)]
pub struct KroneckerKernel;

impl PairwiseKernel for KroneckerKernel {
    fn name(&self) -> &'static str {
        "kronecker"
    }
    fn requires_homogeneous(&self) -> bool {
        false
    }
    fn terms(&self) -> Vec<KernelTerm> {
        vec![term(1.0, Drug, Target, (First, Second), (First, Second))]
    }
    fn value(&self, d: &DenseMatrix, t: &DenseMatrix, a: (usize, usize), b: (usize, usize)) -> f64 {
        d.get(a.0, b.0) * t.get(a.1, b.1)
    }
}

/// k_D * delta(t = t') + delta(d = d') * k_T; operator form D(x)I + I(x)T.
/// Only informative in setting 1: the identity factors vanish for objects
/// that were never seen in training.
#[derive(Debug, Clone, Copy)]
pub struct CartesianKernel;

impl PairwiseKernel for CartesianKernel {
    fn name(&self) -> &'static str {
        "cartesian"
    }
    fn requires_homogeneous(&self) -> bool {
        false
    }
    fn terms(&self) -> Vec<KernelTerm> {
        vec![
            term(1.0, Drug, Identity, (First, Second), (First, Second)),
            term(1.0, Identity, Target, (First, Second), (First, Second)),
        ]
    }
    fn value(&self, d: &DenseMatrix, t: &DenseMatrix, a: (usize, usize), b: (usize, usize)) -> f64 {
        d.get(a.0, b.0) * delta(a.1, b.1) + delta(a.0, b.0) * t.get(a.1, b.1)
    }
}

/// k(d,db)k(d',db') + k(d,db')k(d',db); operator form (I+P)(D(x)D).
#[derive(Debug, Clone, Copy)]
pub struct SymmetricKernel;

impl PairwiseKernel for SymmetricKernel {
    fn name(&self) -> &'static str {
        "symmetric"
    }
    fn requires_homogeneous(&self) -> bool {
        true
    }
    fn terms(&self) -> Vec<KernelTerm> {
        vec![
            term(1.0, Drug, Drug, (First, Second), (First, Second)),
            term(1.0, Drug, Drug, (Second, First), (First, Second)),
        ]
    }
    fn value(
        &self,
        d: &DenseMatrix,
        _t: &DenseMatrix,
        a: (usize, usize),
        b: (usize, usize),
    ) -> f64 {
        d.get(a.0, b.0) * d.get(a.1, b.1) + d.get(a.0, b.1) * d.get(a.1, b.0)
    }
}

/// k(d,db)k(d',db') - k(d,db')k(d',db); operator form (I-P)(D(x)D).
#[derive(Debug, Clone, Copy)]
pub struct AntiSymmetricKernel;

impl PairwiseKernel for AntiSymmetricKernel {
    fn name(&self) -> &'static str {
        "antisymmetric"
    }
    fn requires_homogeneous(&self) -> bool {
        true
    }
    fn terms(&self) -> Vec<KernelTerm> {
        vec![
            term(1.0, Drug, Drug, (First, Second), (First, Second)),
            term(-1.0, Drug, Drug, (Second, First), (First, Second)),
        ]
    }
    fn value(
        &self,
        d: &DenseMatrix,
        _t: &DenseMatrix,
        a: (usize, usize),
        b: (usize, usize),
    ) -> f64 {
        d.get(a.0, b.0) * d.get(a.1, b.1) - d.get(a.0, b.1) * d.get(a.1, b.0)
    }
}

/// k(d,db) - k(d,db') - k(d',db) + k(d',db');
/// operator form (I-P)(D(x)1)(I-P), expanded into four terms.
#[derive(Debug, Clone, Copy)]
pub struct RankingKernel;

impl PairwiseKernel for RankingKernel {
    fn name(&self) -> &'static str {
        "ranking"
    }
    fn requires_homogeneous(&self) -> bool {
        true
    }
    fn terms(&self) -> Vec<KernelTerm> {
        vec![
            term(1.0, Drug, Ones, (First, Second), (First, Second)),
            term(-1.0, Drug, Ones, (Second, First), (First, Second)),
            term(-1.0, Drug, Ones, (First, Second), (Second, First)),
            term(1.0, Drug, Ones, (Second, First), (Second, First)),
        ]
    }
    fn value(
        &self,
        d: &DenseMatrix,
        _t: &DenseMatrix,
        a: (usize, usize),
        b: (usize, usize),
    ) -> f64 {
        ranking_value(d, a, b)
    }
}

/// The ranking kernel squared (metric learning pairwise kernel);
/// operator form (I+P)(I-Q)(D(x)D)(I-Q)^T(I+P), expanded into ten terms.
#[derive(Debug, Clone, Copy)]
pub struct MlpkKernel;

impl PairwiseKernel for MlpkKernel {
    fn name(&self) -> &'static str {
        "mlpk"
    }
    fn requires_homogeneous(&self) -> bool {
        true
    }
    fn terms(&self) -> Vec<KernelTerm> {
        vec![
            // squared diagonal blocks: Q(D(x)D)Q^T and its P-conjugates
            term(1.0, Drug, Drug, (First, First), (First, First)),
            term(1.0, Drug, Drug, (Second, Second), (First, First)),
            term(1.0, Drug, Drug, (First, First), (Second, Second)),
            term(1.0, Drug, Drug, (Second, Second), (Second, Second)),
            // 2(D(x)D) and 2P(D(x)D)
            term(2.0, Drug, Drug, (First, Second), (First, Second)),
            term(2.0, Drug, Drug, (Second, First), (First, Second)),
            // -2Q(D(x)D), -2PQ(D(x)D), -2(D(x)D)Q^T, -2(D(x)D)Q^T P
            term(-2.0, Drug, Drug, (First, First), (First, Second)),
            term(-2.0, Drug, Drug, (Second, Second), (First, Second)),
            term(-2.0, Drug, Drug, (First, Second), (First, First)),
            term(-2.0, Drug, Drug, (First, Second), (Second, Second)),
        ]
    }
    fn value(
        &self,
        d: &DenseMatrix,
        _t: &DenseMatrix,
        a: (usize, usize),
        b: (usize, usize),
    ) -> f64 {
        let r = ranking_value(d, a, b);
        r * r
    }
}
