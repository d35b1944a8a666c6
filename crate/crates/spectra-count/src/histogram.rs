use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use spectra_core::density::BinEstimate;

use crate::error::{Error, Result};

/// Per-bin eigenvalue counts over `[a_total, b_total]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityHistogram {
    pub edges: Vec<f64>,
    pub counts: Vec<f64>,
    pub stderr: Vec<f64>,
    pub meta: HistogramMeta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramMeta {
    pub mode: String,
    pub estimator: String,
    pub quad_qubits: u32,
    /// Quadrature node count `N`.
    pub quad_points: usize,
    pub probes: usize,
    pub seed: u64,
    pub dim: usize,
    pub pad_count: usize,
    /// Present only when timing was requested; keeps default output
    /// reproducible byte for byte.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl DensityHistogram {
    pub fn from_bins(bins: &[BinEstimate], meta: HistogramMeta) -> Self {
        let mut edges: Vec<f64> = bins.iter().map(|b| b.lo).collect();
        edges.extend(bins.last().map(|b| b.hi));
        Self {
            edges,
            counts: bins.iter().map(|b| b.count).collect(),
            stderr: bins.iter().map(|b| b.stderr).collect(),
            meta,
        }
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn validate(&self) -> Result<()> {
        let b = self.counts.len();
        if self.edges.len() != b + 1 || self.stderr.len() != b {
            return Err(Error::Histogram(format!(
                "{} edges, {} counts, {} stderr",
                self.edges.len(),
                b,
                self.stderr.len()
            )));
        }
        if !self.edges.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Histogram("edges are not strictly increasing".into()));
        }
        if self.stderr.iter().any(|s| !(*s >= 0.0)) {
            return Err(Error::Histogram("negative standard error".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let h: Self = serde_json::from_str(text)?;
        h.validate()?;
        Ok(h)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("edge_lo,edge_hi,count,stderr\n");
        for i in 0..self.bins() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.edges[i],
                self.edges[i + 1],
                self.counts[i],
                self.stderr[i]
            ));
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>, format: crate::OutputFormat) -> Result<()> {
        let path = path.as_ref();
        let body = match format {
            crate::OutputFormat::Json => self.to_json()?,
            crate::OutputFormat::Csv => self.to_csv(),
        };
        fs::write(path, body).map_err(|source| Error::Io { path: path.into(), source })
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}
