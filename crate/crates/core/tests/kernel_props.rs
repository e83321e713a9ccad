//! Kernel-level invariants: the term decomposition reproduces the kernel
//! function entry by entry, and each kernel transforms correctly under
//! argument swaps.

mod common;

use common::{random_instance, rng};
use kronvec::{build_explicit, pairwise_kernel, CompiledPairwiseOp, PAIRWISE_KERNELS};

/// Assemble the full matrix from the term decomposition by multiplying unit
/// vectors, and compare against the directly evaluated kernel function.
#[test]
fn decomposition_matches_kernel_function_entrywise() {
    let mut rng = rng(0x6b65_7201);
    for kernel in PAIRWISE_KERNELS {
        for trial in 0..20 {
            let homogeneous = kernel.requires_homogeneous() || trial % 2 == 1;
            let inst = random_instance(&mut rng, homogeneous, false);
            let explicit = build_explicit(
                *kernel,
                &inst.drug,
                inst.target.as_ref(),
                &inst.out_sample,
                &inst.in_sample,
            )
            .unwrap();
            let op = CompiledPairwiseOp::compile(
                *kernel,
                &inst.drug,
                inst.target.as_ref(),
                &inst.out_sample,
                &inst.in_sample,
            )
            .unwrap();
            let n_in = inst.in_sample.len();
            for j in 0..n_in {
                let mut e = vec![0.0; n_in];
                e[j] = 1.0;
                let col = op.matvec(&e).unwrap().values;
                for (i, got) in col.iter().enumerate() {
                    let want = explicit.matrix.get(i, j);
                    assert!(
                        (got - want).abs() <= 1e-10 * want.abs().max(1.0),
                        "{} trial {trial} entry ({i},{j}): {got} vs {want}",
                        kernel.name()
                    );
                }
            }
        }
    }
}

#[test]
fn argument_swap_symmetries() {
    let mut rng = rng(0x6b65_7202);
    for _ in 0..30 {
        let inst = random_instance(&mut rng, true, false);
        let d = &inst.drug;
        let m = d.rows();
        let sym = pairwise_kernel("symmetric").unwrap();
        let anti = pairwise_kernel("antisymmetric").unwrap();
        let ranking = pairwise_kernel("ranking").unwrap();
        let mlpk = pairwise_kernel("mlpk").unwrap();
        for a0 in 0..m {
            for a1 in 0..m {
                for b0 in 0..m {
                    for b1 in 0..m {
                        let a = (a0, a1);
                        let a_swapped = (a1, a0);
                        let b = (b0, b1);
                        let tol = 1e-12;

                        let base = sym.value(d, d, a, b);
                        assert!((sym.value(d, d, a_swapped, b) - base).abs() < tol);

                        let base = anti.value(d, d, a, b);
                        assert!((anti.value(d, d, a_swapped, b) + base).abs() < tol);

                        let base = ranking.value(d, d, a, b);
                        assert!((ranking.value(d, d, a_swapped, b) + base).abs() < tol);

                        let base = mlpk.value(d, d, a, b);
                        assert!((mlpk.value(d, d, a_swapped, b) - base).abs() < tol);
                    }
                }
            }
        }
    }
}
