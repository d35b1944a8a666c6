mod common;

use spectra_core::density::{DensityEstimator, DensityParams, Estimator, Mode};
use spectra_count::request::estimate_for_operator;

use common::{rng, rotated_diagonal};

// every eigenvalue at least 0.04 from the nearest edge of a 0.25-wide bin
const EIGS: [f64; 10] = [-0.4, 0.05, 0.12, 0.2, 0.3, 0.45, 0.6, 0.85, 0.9, 1.7];

fn params(mode: Mode, probes: usize, bits: u32) -> DensityParams {
    let mut p = DensityParams::new((0.0, 1.0), 4, mode);
    p.probes = probes;
    p.quad_qubits = bits;
    p.estimator = Estimator::Nu;
    p.seed = 99;
    p
}

#[test]
fn classical_agrees_with_exact() {
    let a = rotated_diagonal(&EIGS, &mut rng(1));
    let exact = estimate_for_operator(&a, &params(Mode::ExactEig, 0, 6), false).unwrap();
    assert_eq!(exact.counts, vec![3.0, 2.0, 1.0, 2.0]);
    let est = estimate_for_operator(&a, &params(Mode::ClassicalStochastic, 1000, 6), false).unwrap();
    for i in 0..4 {
        let tol = (4.0 * est.stderr[i]).max(0.05);
        assert!(
            (est.counts[i] - exact.counts[i]).abs() <= tol,
            "bin {i}: {} vs {} (tol {tol})",
            est.counts[i],
            exact.counts[i]
        );
        assert!(est.stderr[i] > 0.0);
    }
}

#[test]
fn quantum_and_classical_share_samples() {
    let eigs = [-0.3, 0.1, 0.2, 0.4, 0.55, 0.7, 0.95, 1.4];
    let a = rotated_diagonal(&eigs, &mut rng(2));
    let classical = DensityEstimator::new(&a, params(Mode::ClassicalStochastic, 16, 4)).unwrap();
    let quantum = DensityEstimator::new(&a, params(Mode::QuantumSim, 16, 4)).unwrap();
    assert_eq!(quantum.pad_count(), 0);
    for bin in 0..4 {
        let c = classical.estimate_bin(bin).unwrap();
        let q = quantum.estimate_bin(bin).unwrap();
        assert_eq!(c.samples.len(), q.samples.len());
        for (x, y) in c.samples.iter().zip(&q.samples) {
            assert!((x - y).abs() <= 1e-10 * x.abs(), "bin {bin}: {x} vs {y}");
        }
    }
}

#[test]
fn padding_keeps_counts() {
    let eigs = [0.1, 0.3, 0.6, 0.65, 0.9];
    let a = rotated_diagonal(&eigs, &mut rng(3));
    let exact = estimate_for_operator(&a, &params(Mode::ExactEig, 0, 5), false).unwrap();
    let quantum = estimate_for_operator(&a, &params(Mode::QuantumSim, 200, 5), false).unwrap();
    assert_eq!(quantum.meta.pad_count, 3);
    for i in 0..4 {
        let tol = (4.0 * quantum.stderr[i]).max(0.05);
        assert!((quantum.counts[i] - exact.counts[i]).abs() <= tol, "bin {i}");
    }
}

#[test]
fn output_independent_of_thread_count() {
    let a = rotated_diagonal(&EIGS, &mut rng(4));
    let p = params(Mode::ClassicalStochastic, 50, 5);
    let reference = estimate_for_operator(&a, &p, false).unwrap().to_json().unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let json = pool.install(|| estimate_for_operator(&a, &p, false).unwrap().to_json().unwrap());
        assert_eq!(json, reference, "{threads} threads");
    }
}

#[test]
fn single_bin_counts_the_whole_interval() {
    let a = rotated_diagonal(&EIGS, &mut rng(5));
    let mut p = params(Mode::ExactEig, 0, 6);
    p.bins = 1;
    let h = estimate_for_operator(&a, &p, false).unwrap();
    assert_eq!(h.counts, vec![8.0]);
}
