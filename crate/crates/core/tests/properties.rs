use num_complex::Complex64;
use proptest::prelude::*;

use spectra_core::augmented::{permutation_as_cnots, permutation_pi, permute_blocks};
use spectra_core::estimator::{exact_mu, exact_trace_direct};
use spectra_core::linalg::{eig_hermitian, solve_shifted, HermitianOperator};
use spectra_core::quadrature::trapezoid_circle;
use spectra_core::quantum::{apply_block_permutation, prepare_state, Registers};

fn hermitian(n: usize) -> impl Strategy<Value = HermitianOperator> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), n * n).prop_map(move |raw| {
        let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = Complex64::new(raw[i * n + i].0, 0.0);
            for j in (i + 1)..n {
                let (re, im) = raw[i * n + j];
                entries[i * n + j] = Complex64::new(re, im);
                entries[j * n + i] = Complex64::new(re, -im);
            }
        }
        HermitianOperator::from_row_major(n, entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn filter_matches_closed_form(gamma in -5.0..5.0f64, rho in 0.01..3.0f64, bits in 1u32..=6, t in -4.0..4.0f64) {
        let q = trapezoid_circle(gamma, rho, bits).unwrap();
        let lambda = gamma + t * rho;
        let f = q.filter_value(lambda);
        prop_assert!((f.re - q.filter_closed_form(lambda)).abs() <= 1e-12);
        prop_assert!(f.im.abs() <= 1e-12);
        let mirrored = q.filter_value(2.0 * gamma - lambda);
        prop_assert!((f - mirrored).norm() <= 1e-12);
    }

    #[test]
    fn pi_is_an_involution(bits in 1u32..=10, k in 0usize..1024) {
        let n = 1usize << bits;
        let k = k % n;
        let image = permutation_pi(n, k).unwrap();
        prop_assert!(image < n);
        prop_assert_eq!(permutation_pi(n, image).unwrap(), k);
        prop_assert_eq!(permutation_as_cnots(bits).len(), bits as usize - 1);
    }

    #[test]
    fn block_permutation_preserves_norm(bits in 1u32..=4, sys in 0u32..=2, seed in any::<u64>()) {
        let r = Registers::new(bits, sys);
        let amps: Vec<Complex64> = (0..r.len())
            .map(|i| {
                let x = seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64) as f64;
                Complex64::new((x * 1e-19).sin(), (x * 3e-19).cos())
            })
            .collect();
        let state = prepare_state(&amps, r).unwrap();
        prop_assert!((state.norm_sq() - 1.0).abs() <= 1e-12);
        let permuted = apply_block_permutation(&state);
        prop_assert!((permuted.norm_sq() - 1.0).abs() <= 1e-12);
        let block = r.system_len();
        let by_vector = permute_blocks(state.amplitudes(), block);
        prop_assert_eq!(permuted.amplitudes(), &by_vector[..]);
    }

    #[test]
    fn shifted_solve_residual(a in hermitian(6), re in -3.0..3.0f64, im in 0.05..2.0f64, sign in any::<bool>()) {
        let z = Complex64::new(re, if sign { im } else { -im });
        let v: Vec<Complex64> = (0..6).map(|i| Complex64::new(i as f64 - 2.5, 0.5)).collect();
        let x = solve_shifted(&a, z, &v).unwrap();
        let ax = a.matvec(&x);
        let res: f64 = x.iter().zip(&ax).zip(&v).map(|((xi, axi), vi)| (z * xi - axi - vi).norm_sqr()).sum::<f64>().sqrt();
        let v_norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(res <= 1e-10 * v_norm);
    }

    #[test]
    fn direct_trace_equals_eigen_sum(a in hermitian(5), bits in 2u32..=5) {
        let q = trapezoid_circle(0.0, 1.5, bits).unwrap();
        let eigs = eig_hermitian(&a).unwrap();
        let mu = exact_mu(&eigs, &q);
        let direct = exact_trace_direct(&a, &q).unwrap();
        prop_assert!((mu - direct).norm() <= 1e-10 * mu.norm().max(1.0));
    }
}

#[test]
fn filter_decays_outside_the_circle() {
    for bits in [2u32, 3, 4, 5] {
        let q = trapezoid_circle(1.0, 0.5, bits).unwrap();
        let grid: Vec<f64> = (0..=1000).map(|i| 0.5 + 1.5 * i as f64 / 1000.0).collect();
        for w in grid.windows(2) {
            let (near, far) = (q.filter_value(1.0 + w[0]).norm(), q.filter_value(1.0 + w[1]).norm());
            assert!(far <= near + 1e-15, "N = {}, |u| = {}", q.len(), w[1] / 0.5);
        }
    }
}
