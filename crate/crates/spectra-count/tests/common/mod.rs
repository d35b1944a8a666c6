#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectra_core::linalg::HermitianOperator;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries uniform in `[-scale, scale]`, Hermitian by construction.
pub fn random_hermitian(n: usize, scale: f64, rng: &mut ChaCha8Rng) -> HermitianOperator {
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        m[i * n + i] = Complex64::new(rng.random_range(-scale..scale), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale));
            m[i * n + j] = z;
            m[j * n + i] = z.conj();
        }
    }
    HermitianOperator::from_row_major(n, m).unwrap()
}

pub fn random_real_vector(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// `H diag(eigs) H` with `H` a complex Householder reflector, so the
/// spectrum is known but the matrix is dense.
pub fn rotated_diagonal(eigs: &[f64], rng: &mut ChaCha8Rng) -> HermitianOperator {
    let n = eigs.len();
    let u: Vec<Complex64> =
        (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let norm_sq: f64 = u.iter().map(|c| c.norm_sqr()).sum();
    let h = |i: usize, j: usize| {
        let delta = if i == j { 1.0 } else { 0.0 };
        Complex64::new(delta, 0.0) - u[i] * u[j].conj() * (2.0 / norm_sq)
    };
    let mut m = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = (0..n).map(|k| h(i, k) * eigs[k] * h(k, j)).sum();
        }
    }
    HermitianOperator::from_row_major(n, m).unwrap()
}

/// Lower triangle as a complex Hermitian coordinate file.
pub fn to_matrix_market(a: &HermitianOperator) -> String {
    let n = a.dim();
    let mut lines = Vec::new();
    for i in 0..n {
        for j in 0..=i {
            let z = a.get(i, j);
            lines.push(format!("{} {} {:e} {:e}", i + 1, j + 1, z.re, z.im));
        }
    }
    format!("%%MatrixMarket matrix coordinate complex hermitian\n{n} {n} {}\n{}\n", lines.len(), lines.join("\n"))
}

pub fn write_file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

pub fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spectra-count"))
}
