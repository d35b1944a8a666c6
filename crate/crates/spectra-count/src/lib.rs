//! File formats and the command-line driver around `spectra-core`.
//!
//! * [`matrix_market`] reads dense Hermitian matrices from Matrix Market files.
//! * [`histogram`] holds the per-bin output and its JSON/CSV encodings.
//! * [`circuit`] exports the counting-register circuit as a JSON gate list.
//! * [`request`] ties them together into one density estimation run.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circuit;
pub mod error;
pub mod histogram;
pub mod matrix_market;
pub mod request;

pub use error::{Error, Result};
pub use histogram::DensityHistogram;
pub use request::{estimate_density, DensityRequest, OutputFormat};
