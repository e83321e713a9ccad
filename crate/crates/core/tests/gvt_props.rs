//! Property checks for the vec-trick engine against a brute-force double
//! loop, across seeded random instances.

mod common;

use common::{max_relative_gap, random_matrix, random_vector, rng};
use kronvec::{GvtProblem, GvtVariant};
use rand::Rng;

/// u[i] = sum_j A[of[i], if[j]] * B[os[i], is[j]] * v[j], done naively.
fn double_loop_matvec(
    a: &kronvec::DenseMatrix,
    b: &kronvec::DenseMatrix,
    out_first: &[usize],
    out_second: &[usize],
    in_first: &[usize],
    in_second: &[usize],
    v: &[f64],
) -> Vec<f64> {
    let mut u = vec![0.0; out_first.len()];
    for i in 0..out_first.len() {
        for j in 0..in_first.len() {
            u[i] += a.get(out_first[i], in_first[j]) * b.get(out_second[i], in_second[j]) * v[j];
        }
    }
    u
}

struct Case {
    a: kronvec::DenseMatrix,
    b: kronvec::DenseMatrix,
    out_first: Vec<usize>,
    out_second: Vec<usize>,
    in_first: Vec<usize>,
    in_second: Vec<usize>,
    v: Vec<f64>,
}

fn random_case(rng: &mut rand_chacha::ChaCha8Rng) -> Case {
    let (ar, ac) = (rng.random_range(1..=8), rng.random_range(1..=8));
    let (br, bc) = (rng.random_range(1..=8), rng.random_range(1..=8));
    let n_out = rng.random_range(0..=10);
    let n_in = rng.random_range(0..=10);
    Case {
        a: random_matrix(rng, ar, ac),
        b: random_matrix(rng, br, bc),
        out_first: (0..n_out).map(|_| rng.random_range(0..ar)).collect(),
        out_second: (0..n_out).map(|_| rng.random_range(0..br)).collect(),
        in_first: (0..n_in).map(|_| rng.random_range(0..ac)).collect(),
        in_second: (0..n_in).map(|_| rng.random_range(0..bc)).collect(),
        v: random_vector(rng, n_in),
    }
}

#[test]
fn auto_matvec_matches_double_loop_on_200_instances() {
    let mut rng = rng(0x6776_7401);
    for trial in 0..200 {
        let c = random_case(&mut rng);
        let p = GvtProblem::new(
            &c.a,
            &c.b,
            &c.out_first,
            &c.out_second,
            &c.in_first,
            &c.in_second,
        )
        .unwrap();
        let fast = p.matvec(&c.v, None).unwrap();
        let slow = double_loop_matvec(
            &c.a,
            &c.b,
            &c.out_first,
            &c.out_second,
            &c.in_first,
            &c.in_second,
            &c.v,
        );
        assert!(
            max_relative_gap(&fast.values, &slow) < 1e-10,
            "trial {trial}"
        );
    }
}

#[test]
fn variants_agree_and_counter_is_exact() {
    let mut rng = rng(0x6776_7402);
    for trial in 0..200 {
        let c = random_case(&mut rng);
        let p = GvtProblem::new(
            &c.a,
            &c.b,
            &c.out_first,
            &c.out_second,
            &c.in_first,
            &c.in_second,
        )
        .unwrap();
        let one = p.matvec(&c.v, Some(GvtVariant::One)).unwrap();
        let two = p.matvec(&c.v, Some(GvtVariant::Two)).unwrap();
        assert!(
            max_relative_gap(&one.values, &two.values) < 1e-10,
            "trial {trial}"
        );

        let (c1, c2) = p.cost();
        assert_eq!(one.ops, c1);
        assert_eq!(two.ops, c2);
        let auto = p.matvec(&c.v, None).unwrap();
        assert_eq!(auto.ops, c1.min(c2), "auto must run the cheaper variant");
        if c1 == c2 {
            assert_eq!(auto.variant, GvtVariant::One, "ties go to variant 1");
        }
        assert_eq!(
            p.intermediate_size(GvtVariant::One),
            c.b.rows() * c.a.cols()
        );
        assert_eq!(
            p.intermediate_size(GvtVariant::Two),
            c.a.rows() * c.b.cols()
        );
    }
}

#[test]
fn matvec_is_linear() {
    let mut rng = rng(0x6776_7403);
    for _ in 0..50 {
        let c = random_case(&mut rng);
        let p = GvtProblem::new(
            &c.a,
            &c.b,
            &c.out_first,
            &c.out_second,
            &c.in_first,
            &c.in_second,
        )
        .unwrap();
        let w = random_vector(&mut rng, c.v.len());
        let (alpha, beta) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let mixed: Vec<f64> =
            c.v.iter()
                .zip(&w)
                .map(|(x, y)| alpha * x + beta * y)
                .collect();
        let lhs = p.matvec(&mixed, None).unwrap().values;
        let uv = p.matvec(&c.v, None).unwrap().values;
        let uw = p.matvec(&w, None).unwrap().values;
        let rhs: Vec<f64> = uv
            .iter()
            .zip(&uw)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        assert!(max_relative_gap(&lhs, &rhs) < 1e-10);
    }
}
