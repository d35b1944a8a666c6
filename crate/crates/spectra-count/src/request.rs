use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use spectra_core::density::{BinEstimate, DensityEstimator, DensityParams};
use spectra_core::linalg::HermitianOperator;

use crate::error::Result;
use crate::histogram::{DensityHistogram, HistogramMeta};
use crate::matrix_market::read_matrix_market;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct DensityRequest {
    pub matrix: PathBuf,
    pub params: DensityParams,
    pub out: PathBuf,
    pub format: OutputFormat,
    /// Record wall time in the output metadata.
    pub timing: bool,
}

/// Loads the matrix and estimates every bin.
pub fn estimate_density(req: &DensityRequest) -> Result<DensityHistogram> {
    req.params.validate()?;
    let a = read_matrix_market(&req.matrix)?;
    estimate_for_operator(&a, &req.params, req.timing)
}

/// Bins run in parallel; each bin's result depends only on the request, so
/// the output is identical for any thread count.
pub fn estimate_for_operator(a: &HermitianOperator, params: &DensityParams, timing: bool) -> Result<DensityHistogram> {
    let start = Instant::now();
    let estimator = DensityEstimator::new(a, params.clone())?;
    let bins: Vec<BinEstimate> = (0..estimator.bin_count())
        .into_par_iter()
        .map(|i| estimator.estimate_bin(i))
        .collect::<spectra_core::Result<_>>()?;
    let meta = HistogramMeta {
        mode: params.mode.name().to_string(),
        estimator: params.estimator.name().to_string(),
        quad_qubits: params.quad_qubits,
        quad_points: 1usize << params.quad_qubits,
        probes: params.probes,
        seed: params.seed,
        dim: a.dim(),
        pad_count: estimator.pad_count(),
        wall_time_s: timing.then(|| start.elapsed().as_secs_f64()),
    };
    Ok(DensityHistogram::from_bins(&bins, meta))
}
