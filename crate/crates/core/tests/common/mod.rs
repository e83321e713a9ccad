//! Shared helpers for the integration and acceptance suites: seeded random
//! instances, a dense direct solver, explicit feature maps and an
//! eigenvalue probe. Everything here is deliberately independent of the
//! library's fast computation paths.
#![allow(dead_code)]

use kronvec::{DenseMatrix, PairSample};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DenseMatrix {
    let values = (0..rows * cols)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    DenseMatrix::new(rows, cols, values).unwrap()
}

/// Random PSD matrix G^T G with G uniform; exact Gram structure.
pub fn random_psd(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    let g = random_matrix(rng, n + 1, n);
    let mut k = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for r in 0..n + 1 {
                acc += g.get(r, i) * g.get(r, j);
            }
            k.set(i, j, acc);
        }
    }
    k
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

pub fn random_pairs(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: usize,
    q: usize,
    homogeneous: bool,
    with_labels: bool,
) -> PairSample {
    let first: Vec<usize> = (0..n).map(|_| rng.random_range(0..m)).collect();
    let second: Vec<usize> = (0..n)
        .map(|_| rng.random_range(0..if homogeneous { m } else { q }))
        .collect();
    let labels = with_labels.then(|| random_vector(rng, n));
    PairSample::new(first, second, labels, homogeneous).unwrap()
}

/// One random test case: base kernels, an in-sample, a distinct out-sample
/// and a vector to multiply.
pub struct KernelInstance {
    pub drug: DenseMatrix,
    pub target: Option<DenseMatrix>,
    pub out_sample: PairSample,
    pub in_sample: PairSample,
    pub v: Vec<f64>,
}

pub fn random_instance(rng: &mut ChaCha8Rng, homogeneous: bool, psd: bool) -> KernelInstance {
    let m = rng.random_range(1..=6);
    let q = if homogeneous {
        m
    } else {
        rng.random_range(1..=6)
    };
    let n_in = rng.random_range(1..=20);
    let n_out = rng.random_range(1..=20);
    let make = |rng: &mut ChaCha8Rng, size: usize| {
        if psd {
            random_psd(rng, size)
        } else {
            random_matrix(rng, size, size)
        }
    };
    let drug = make(rng, m);
    let target = (!homogeneous).then(|| make(rng, q));
    let in_sample = random_pairs(rng, n_in, m, q, homogeneous, false);
    let out_sample = random_pairs(rng, n_out, m, q, homogeneous, false);
    let v = random_vector(rng, n_in);
    KernelInstance {
        drug,
        target,
        out_sample,
        in_sample,
        v,
    }
}

/// Worst-case relative gap between two vectors, with a unit floor on the
/// reference scale so near-zero outputs compare absolutely.
pub fn max_relative_gap(got: &[f64], want: &[f64]) -> f64 {
    assert_eq!(got.len(), want.len());
    let scale = want.iter().fold(1.0_f64, |acc, w| acc.max(w.abs()));
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs() / scale)
        .fold(0.0, f64::max)
}

/// Gaussian elimination with partial pivoting; the direct-solve oracle.
pub fn dense_solve(a: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    let n = a.rows();
    assert_eq!(a.cols(), n);
    assert_eq!(b.len(), n);
    let mut m = a.values().to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if m[r * n + col].abs() > m[pivot * n + col].abs() {
                pivot = r;
            }
        }
        if pivot != col {
            for c in 0..n {
                m.swap(col * n + c, pivot * n + c);
            }
            x.swap(col, pivot);
        }
        let diag = m[col * n + col];
        assert!(diag.abs() > 1e-300, "singular system in oracle solve");
        for r in col + 1..n {
            let f = m[r * n + col] / diag;
            if f != 0.0 {
                for c in col..n {
                    m[r * n + c] -= f * m[col * n + c];
                }
                x[r] -= f * x[col];
            }
        }
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for c in col + 1..n {
            acc -= m[col * n + c] * x[c];
        }
        x[col] = acc / m[col * n + col];
    }
    x
}

/// Smallest eigenvalue of a symmetric matrix (nalgebra backed).
pub fn min_eigenvalue(k: &DenseMatrix) -> f64 {
    let n = k.rows();
    let m = nalgebra::DMatrix::from_row_slice(n, n, k.values());
    nalgebra::SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

fn kron_vec(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

fn basis(index: usize, len: usize) -> Vec<f64> {
    let mut e = vec![0.0; len];
    e[index] = 1.0;
    e
}

/// Explicit feature vector of a pair, per pairwise kernel, built from
/// explicit object features. For the homogeneous kernels both slots read
/// from the drug feature table.
pub fn pair_feature_map(
    name: &str,
    drug_features: &DenseMatrix,
    target_features: &DenseMatrix,
    pair: (usize, usize),
) -> Vec<f64> {
    let d = drug_features.row(pair.0);
    let t = target_features.row(pair.1);
    // second slot reads the drug table only for the homogeneous kernels
    let d2 = || drug_features.row(pair.1);
    match name {
        "linear" => [d, t].concat(),
        "poly2d" => {
            let c = [d, t].concat();
            kron_vec(&c, &c)
        }
        "kronecker" => kron_vec(d, t),
        "cartesian" => {
            let e_t = basis(pair.1, target_features.rows());
            let e_d = basis(pair.0, drug_features.rows());
            [kron_vec(d, &e_t), kron_vec(&e_d, t)].concat()
        }
        "symmetric" | "antisymmetric" => {
            let sign = if name == "symmetric" { 1.0 } else { -1.0 };
            let half = 0.5_f64.sqrt();
            kron_vec(d, d2())
                .iter()
                .zip(kron_vec(d2(), d))
                .map(|(a, b)| half * (a + sign * b))
                .collect()
        }
        "ranking" => d.iter().zip(d2()).map(|(a, b)| a - b).collect(),
        "mlpk" => {
            let diff: Vec<f64> = d.iter().zip(d2()).map(|(a, b)| a - b).collect();
            kron_vec(&diff, &diff)
        }
        other => panic!("no feature map for kernel {other}"),
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
