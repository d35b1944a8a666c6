//! Stochastic trace estimation of the filtered projector
//! `P = sum_k w_k (z_k I - A)^{-1}`.
//!
//! Each real probe `v` yields `s = P v` and two samples: `v^H s`, whose mean
//! estimates `mu = Tr(P)`, and `||s||^2`, whose mean estimates
//! `nu = Tr(P^2)`. Both approximate the number of eigenvalues inside the
//! contour. The eigenvalue-based values [`exact_mu`] and [`exact_nu`] are the
//! reference the samples are checked against.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{EigenDecomposition, HermitianOperator, ShiftedLu};
use crate::quadrature::ContourQuadrature;

/// Largest dimension accepted by [`exact_trace_direct`].
pub const DIRECT_TRACE_CAP: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProbeDistribution {
    #[default]
    Rademacher,
    Gaussian,
}

/// Real probe vector with zero mean and identity covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeVector {
    pub values: Vec<f64>,
    pub distribution: ProbeDistribution,
    pub seed: u64,
    pub stream: u64,
}

impl ProbeVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Draws probe `stream` of the sequence identified by `seed`.
///
/// Every stream is an independent ChaCha8 stream, so probe `i` is the same
/// vector no matter which other probes are drawn or in what order.
pub fn sample_probe(dim: usize, seed: u64, stream: u64, distribution: ProbeDistribution) -> ProbeVector {
    sample_probe_padded(dim, dim, seed, stream, distribution)
}

/// Like [`sample_probe`] but only the first `active` entries are random; the
/// rest are zero. The active prefix is identical to `sample_probe(active, ..)`.
pub fn sample_probe_padded(
    dim: usize,
    active: usize,
    seed: u64,
    stream: u64,
    distribution: ProbeDistribution,
) -> ProbeVector {
    let active = active.min(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut values = vec![0.0; dim];
    for x in values.iter_mut().take(active) {
        *x = match distribution {
            ProbeDistribution::Rademacher => {
                if rng.random::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            ProbeDistribution::Gaussian => rng.sample(StandardNormal),
        };
    }
    ProbeVector { values, distribution, seed, stream }
}

/// Seeded family of probes; probe `i` is stream `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeSource {
    pub seed: u64,
    pub distribution: ProbeDistribution,
    /// Number of leading components that are random. `None` means all.
    pub active_dim: Option<usize>,
}

impl ProbeSource {
    pub fn new(seed: u64) -> Self {
        Self { seed, distribution: ProbeDistribution::Rademacher, active_dim: None }
    }

    pub fn with_distribution(mut self, distribution: ProbeDistribution) -> Self {
        self.distribution = distribution;
        self
    }

    pub fn with_active_dim(mut self, active: usize) -> Self {
        self.active_dim = Some(active);
        self
    }

    pub fn probe(&self, dim: usize, index: u64) -> ProbeVector {
        sample_probe_padded(dim, self.active_dim.unwrap_or(dim), self.seed, index, self.distribution)
    }
}

/// Result of applying the filtered projector to one probe.
#[derive(Debug, Clone)]
pub struct FilteredApplication {
    /// `s = sum_k w_k x_k`.
    pub s: Vec<Complex64>,
    /// `x_k = (z_k I - A)^{-1} v` for `k = 0..N`.
    pub xs: Vec<Vec<Complex64>>,
}

impl FilteredApplication {
    /// `v^H s` for a real probe.
    pub fn quadratic_form(&self, v: &[f64]) -> Complex64 {
        v.iter().zip(&self.s).map(|(vi, si)| si * vi).sum()
    }

    pub fn s_norm_sq(&self) -> f64 {
        crate::norm_sq(&self.s)
    }
}

/// `A` factorized at the upper-half-plane nodes `z_0..z_{N/2}`.
///
/// Node `N-1-k` is `conj(z_k)` and `conj(z_k) I - A = (z_k I - A)^H`, so the
/// lower half is solved with the adjoint of the same factors.
#[derive(Debug, Clone)]
pub struct FilteredProjector {
    quadrature: ContourQuadrature,
    factors: Vec<ShiftedLu>,
    dim: usize,
}

impl FilteredProjector {
    pub fn new(a: &HermitianOperator, quadrature: &ContourQuadrature) -> Result<Self> {
        let half = quadrature.len() / 2;
        let factors = (0..half)
            .map(|k| ShiftedLu::factor(a, quadrature.node(k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { quadrature: quadrature.clone(), factors, dim: a.dim() })
    }

    pub fn quadrature(&self) -> &ContourQuadrature {
        &self.quadrature
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Solves all `N` shifted systems for `v`.
    pub fn solve_all(&self, v: &[f64]) -> Result<Vec<Vec<Complex64>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: v.len() });
        }
        let rhs: Vec<Complex64> = v.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let n = self.quadrature.len();
        let mut xs = vec![Vec::new(); n];
        for (k, lu) in self.factors.iter().enumerate() {
            xs[k] = lu.solve(&rhs)?;
            xs[n - 1 - k] = lu.solve_adjoint(&rhs)?;
        }
        Ok(xs)
    }

    pub fn apply(&self, v: &[f64]) -> Result<FilteredApplication> {
        let xs = self.solve_all(v)?;
        let mut s = vec![Complex64::new(0.0, 0.0); self.dim];
        for (w, x) in self.quadrature.weights().iter().zip(&xs) {
            for (si, xi) in s.iter_mut().zip(x) {
                *si += w * xi;
            }
        }
        Ok(FilteredApplication { s, xs })
    }
}

pub fn apply_filtered_projector(
    a: &HermitianOperator,
    q: &ContourQuadrature,
    v: &ProbeVector,
) -> Result<FilteredApplication> {
    FilteredProjector::new(a, q)?.apply(&v.values)
}

/// Sample means of `v^H s` and `||s||^2` with their standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorResult {
    pub mu_estimate: Complex64,
    pub nu_estimate: f64,
    pub mu_samples: Vec<Complex64>,
    pub nu_samples: Vec<f64>,
    pub sample_count: usize,
    pub mu_stderr: f64,
    pub nu_stderr: f64,
}

impl EstimatorResult {
    pub fn from_samples(mu_samples: Vec<Complex64>, nu_samples: Vec<f64>) -> Self {
        let (mu_estimate, mu_stderr) = complex_mean_and_stderr(&mu_samples);
        let (nu_estimate, nu_stderr) = mean_and_stderr(&nu_samples);
        Self {
            mu_estimate,
            nu_estimate,
            sample_count: nu_samples.len().max(mu_samples.len()),
            mu_samples,
            nu_samples,
            mu_stderr,
            nu_stderr,
        }
    }

    /// Eigenvalue-count estimate from `mu` (the real part).
    pub fn mu_count(&self) -> f64 {
        self.mu_estimate.re
    }
}

/// Sample mean and `sd / sqrt(n)` with the `n - 1` variance denominator.
/// The standard error is zero for fewer than two samples.
pub fn mean_and_stderr(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

fn complex_mean_and_stderr(samples: &[Complex64]) -> (Complex64, f64) {
    let n = samples.len();
    if n == 0 {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    let mean = samples.iter().sum::<Complex64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = samples.iter().map(|x| (x - mean).norm_sqr()).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

/// Runs `probe_count` probes and collects both `mu` and `nu` samples.
pub fn estimate_trace(
    a: &HermitianOperator,
    q: &ContourQuadrature,
    probe_count: usize,
    probes: &ProbeSource,
) -> Result<EstimatorResult> {
    if probe_count == 0 {
        return Err(Error::InvalidRequest("probe count must be at least 1"));
    }
    let projector = FilteredProjector::new(a, q)?;
    let mut mu_samples = Vec::with_capacity(probe_count);
    let mut nu_samples = Vec::with_capacity(probe_count);
    for i in 0..probe_count {
        let v = probes.probe(a.dim(), i as u64);
        let applied = projector.apply(&v.values)?;
        mu_samples.push(applied.quadratic_form(&v.values));
        nu_samples.push(applied.s_norm_sq());
    }
    Ok(EstimatorResult::from_samples(mu_samples, nu_samples))
}

/// Estimates `mu = Tr(P)` as the mean of `v^H s`.
pub fn estimate_mu(
    a: &HermitianOperator,
    q: &ContourQuadrature,
    probe_count: usize,
    probes: &ProbeSource,
) -> Result<EstimatorResult> {
    estimate_trace(a, q, probe_count, probes)
}

/// Estimates `nu = Tr(P^2)` as the mean of `||s||^2`.
pub fn estimate_nu(
    a: &HermitianOperator,
    q: &ContourQuadrature,
    probe_count: usize,
    probes: &ProbeSource,
) -> Result<EstimatorResult> {
    estimate_trace(a, q, probe_count, probes)
}

/// `sum_j f_N(lambda_j)`.
pub fn exact_mu(eigs: &EigenDecomposition, q: &ContourQuadrature) -> Complex64 {
    eigs.eigenvalues.iter().map(|&l| q.filter_value(l)).sum()
}

/// `sum_j |f_N(lambda_j)|^2`.
pub fn exact_nu(eigs: &EigenDecomposition, q: &ContourQuadrature) -> f64 {
    eigs.eigenvalues.iter().map(|&l| q.filter_value(l).norm_sqr()).sum()
}

/// Forms `sum_k w_k (z_k I - A)^{-1}` column by column, solving every node
/// independently. Row-major.
pub fn filtered_projector_matrix(a: &HermitianOperator, q: &ContourQuadrature) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if n > DIRECT_TRACE_CAP {
        return Err(Error::DimensionTooLarge { dim: n, limit: DIRECT_TRACE_CAP });
    }
    let mut p = vec![Complex64::new(0.0, 0.0); n * n];
    for (&z, &w) in q.nodes().iter().zip(q.weights()) {
        let lu = ShiftedLu::factor(a, z)?;
        for col in 0..n {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[col] = Complex64::new(1.0, 0.0);
            let x = lu.solve(&e)?;
            for (row, xr) in x.iter().enumerate() {
                p[row * n + col] += w * xr;
            }
        }
    }
    Ok(p)
}

/// Trace of the explicitly formed filtered projector.
pub fn exact_trace_direct(a: &HermitianOperator, q: &ContourQuadrature) -> Result<Complex64> {
    let n = a.dim();
    let p = filtered_projector_matrix(a, q)?;
    Ok((0..n).map(|i| p[i * n + i]).sum())
}
