//! Eigenvalue-count histograms over a binned interval.
//!
//! Bins are half-open `[a_i, a_{i+1})` except the last, which is closed at the
//! upper end, so exact counts over the bins add up to the count over the
//! whole interval. The stochastic estimators use a circle through each bin's
//! endpoints, where the filter equals 1/2; an eigenvalue sitting exactly on
//! an edge is therefore split between the two neighbouring bins rather than
//! assigned to one of them.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::augmented::build_augmented;
use crate::error::{Error, Result};
use crate::estimator::{mean_and_stderr, FilteredProjector, ProbeDistribution, ProbeSource};
use crate::linalg::{eig_hermitian, HermitianOperator};
use crate::quadrature::{indicator_g, interval_to_circle, trapezoid_circle};
use crate::quantum::{pipeline_hhl, safe_hhl_constant};

pub const DEFAULT_QUAD_QUBITS: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ExactEig,
    ClassicalStochastic,
    QuantumSim,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::ExactEig => "exact-eig",
            Mode::ClassicalStochastic => "classical-stochastic",
            Mode::QuantumSim => "quantum-sim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Estimator {
    /// Mean of `v^H s`.
    Mu,
    /// Mean of `||s||^2`.
    #[default]
    Nu,
}

impl Estimator {
    pub fn name(self) -> &'static str {
        match self {
            Estimator::Mu => "mu",
            Estimator::Nu => "nu",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityParams {
    pub interval: (f64, f64),
    pub bins: usize,
    pub quad_qubits: u32,
    pub probes: usize,
    pub mode: Mode,
    pub estimator: Estimator,
    pub seed: u64,
    pub distribution: ProbeDistribution,
    /// Diagonal value used when padding to a power of two in quantum mode.
    /// Defaults to [`default_pad_value`].
    pub pad_value: Option<f64>,
}

impl DensityParams {
    pub fn new(interval: (f64, f64), bins: usize, mode: Mode) -> Self {
        Self {
            interval,
            bins,
            quad_qubits: DEFAULT_QUAD_QUBITS,
            probes: 100,
            mode,
            estimator: Estimator::Nu,
            seed: 0,
            distribution: ProbeDistribution::Rademacher,
            pad_value: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.interval;
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::EmptyInterval { a, b });
        }
        if self.bins == 0 {
            return Err(Error::InvalidRequest("bins must be at least 1"));
        }
        if self.mode != Mode::ExactEig {
            if self.probes == 0 {
                return Err(Error::InvalidRequest("probes must be at least 1"));
            }
            if !(1..=crate::quadrature::MAX_QUADRATURE_QUBITS).contains(&self.quad_qubits) {
                return Err(Error::NodeCountOutOfRange(self.quad_qubits));
            }
        }
        if self.mode == Mode::QuantumSim && self.estimator == Estimator::Mu {
            return Err(Error::InvalidRequest(
                "quantum-sim reads out ||s||^2 only; use the nu estimator",
            ));
        }
        Ok(())
    }

    pub fn edges(&self) -> Vec<f64> {
        bin_edges(self.interval.0, self.interval.1, self.bins)
    }
}

/// `bins + 1` equally spaced edges; the last edge is exactly `b`.
pub fn bin_edges(a: f64, b: f64, bins: usize) -> Vec<f64> {
    let width = b - a;
    let mut edges: Vec<f64> = (0..bins).map(|i| a + width * i as f64 / bins as f64).collect();
    edges.push(b);
    edges
}

/// Membership under the half-open convention.
pub fn bin_contains(lambda: f64, lo: f64, hi: f64, last: bool) -> bool {
    indicator_g(lambda, lo, hi) == 1 || lambda == lo || (last && lambda == hi)
}

pub fn default_pad_value(interval: (f64, f64)) -> f64 {
    interval.1 + 100.0 * (interval.1 - interval.0)
}

/// Extends `A` with diagonal entries `pad_value` up to the next power of two.
/// Returns the padded operator and the number of added rows.
///
/// The pad value must lie outside `[a - 10w, b + 10w]`, `w = b - a`. Probe
/// components on padded rows are zero, so padded eigenvalues never
/// contribute.
pub fn pad_to_power_of_two(
    a: &HermitianOperator,
    pad_value: f64,
    interval: (f64, f64),
) -> Result<(HermitianOperator, usize)> {
    let width = interval.1 - interval.0;
    let (lo, hi) = (interval.0 - 10.0 * width, interval.1 + 10.0 * width);
    if !pad_value.is_finite() || (lo..=hi).contains(&pad_value) {
        return Err(Error::PadValueInsideInterval(pad_value));
    }
    let n = a.dim();
    let target = n.next_power_of_two();
    if target == n {
        return Ok((a.clone(), 0));
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); target * target];
    for i in 0..n {
        entries[i * target..i * target + n].copy_from_slice(&a.as_slice()[i * n..(i + 1) * n]);
    }
    for i in n..target {
        entries[i * target + i] = Complex64::new(pad_value, 0.0);
    }
    Ok((HermitianOperator::from_row_major(target, entries)?, target - n))
}

/// Estimate for one bin.
#[derive(Debug, Clone, PartialEq)]
pub struct BinEstimate {
    pub lo: f64,
    pub hi: f64,
    pub count: f64,
    pub stderr: f64,
    /// Per-probe samples (real part for `mu`); empty in exact mode.
    pub samples: Vec<f64>,
}

/// Per-bin estimation for a fixed operator and request.
#[derive(Debug, Clone)]
pub struct DensityEstimator {
    params: DensityParams,
    operator: HermitianOperator,
    active_dim: usize,
    pad_count: usize,
    eigenvalues: Option<Vec<f64>>,
    edges: Vec<f64>,
}

impl DensityEstimator {
    pub fn new(a: &HermitianOperator, params: DensityParams) -> Result<Self> {
        params.validate()?;
        let edges = params.edges();
        let active_dim = a.dim();
        let (operator, pad_count, eigenvalues) = match params.mode {
            Mode::ExactEig => (a.clone(), 0, Some(eig_hermitian(a)?.eigenvalues)),
            Mode::ClassicalStochastic => (a.clone(), 0, None),
            Mode::QuantumSim => {
                let pad = params.pad_value.unwrap_or_else(|| default_pad_value(params.interval));
                let (padded, count) = pad_to_power_of_two(a, pad, params.interval)?;
                (padded, count, None)
            }
        };
        Ok(Self { params, operator, active_dim, pad_count, eigenvalues, edges })
    }

    pub fn params(&self) -> &DensityParams {
        &self.params
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn bin_count(&self) -> usize {
        self.params.bins
    }

    pub fn pad_count(&self) -> usize {
        self.pad_count
    }

    fn probes(&self) -> ProbeSource {
        ProbeSource::new(self.params.seed)
            .with_distribution(self.params.distribution)
            .with_active_dim(self.active_dim)
    }

    /// Estimate for bin `i`. Probe `p` is the same vector in every bin.
    pub fn estimate_bin(&self, i: usize) -> Result<BinEstimate> {
        if i >= self.params.bins {
            return Err(Error::IndexOutOfRange { index: i, size: self.params.bins });
        }
        let (lo, hi) = (self.edges[i], self.edges[i + 1]);
        let last = i + 1 == self.params.bins;
        if let Some(eigs) = &self.eigenvalues {
            let count = eigs.iter().filter(|&&l| bin_contains(l, lo, hi, last)).count();
            return Ok(BinEstimate { lo, hi, count: count as f64, stderr: 0.0, samples: Vec::new() });
        }

        let (gamma, rho) = interval_to_circle(lo, hi)?;
        let q = trapezoid_circle(gamma, rho, self.params.quad_qubits)?;
        let probes = self.probes();
        let dim = self.operator.dim();
        let mut samples = Vec::with_capacity(self.params.probes);
        match self.params.mode {
            Mode::ClassicalStochastic => {
                let projector = FilteredProjector::new(&self.operator, &q)?;
                for p in 0..self.params.probes {
                    let v = probes.probe(dim, p as u64);
                    let applied = projector.apply(&v.values)?;
                    samples.push(match self.params.estimator {
                        Estimator::Mu => applied.quadratic_form(&v.values).re,
                        Estimator::Nu => applied.s_norm_sq(),
                    });
                }
            }
            Mode::QuantumSim => {
                for p in 0..self.params.probes {
                    let v = probes.probe(dim, p as u64);
                    let sys = build_augmented(&self.operator, &q, &v.values)?;
                    let readout = pipeline_hhl(&sys, safe_hhl_constant(&sys))?;
                    samples.push(readout.s_norm_sq);
                }
            }
            Mode::ExactEig => unreachable!("handled above"),
        }
        let (count, stderr) = mean_and_stderr(&samples);
        Ok(BinEstimate { lo, hi, count, stderr, samples })
    }

    pub fn estimate_all(&self) -> Result<Vec<BinEstimate>> {
        (0..self.params.bins).map(|i| self.estimate_bin(i)).collect()
    }
}
