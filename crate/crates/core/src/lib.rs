//! Eigenvalue counting for Hermitian matrices by contour-integral filtering.
//!
//! The spectral projector onto the eigenvalues inside an interval is
//! approximated with a trapezoidal rule on a circle, and its trace is
//! estimated stochastically from probe vectors. The same estimate can be read
//! out of a quantum pipeline: the shifted systems are stacked into one
//! Hermitian augmented system, the solution blocks are reordered by a CNOT
//! permutation, and a QFT on the quadrature register concentrates the filtered
//! vector on a single counting outcome. [`quantum`] simulates that pipeline
//! exactly on a statevector.
//!
//! The crate is `no_std` (with `alloc`); enable the `std` feature to link
//! against the standard library's math routines.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod augmented;
pub mod density;
pub mod error;
pub mod estimator;
pub mod linalg;
pub mod quadrature;
pub mod quantum;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub(crate) fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}
