//! Trapezoidal quadrature on a circle and the rational filter it induces.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub const MAX_QUADRATURE_QUBITS: u32 = 20;

/// Nodes `z_k = gamma + rho * e^{2 pi i (k + 1/2) / N}` and weights
/// `w_k = (rho / N) * e^{2 pi i (k + 1/2) / N}` for `k = 0..N`.
///
/// The half-step offset keeps every node off the real axis, so `z_k I - A` is
/// nonsingular for any Hermitian `A`, and pairs node `k` with node `N - 1 - k`
/// as complex conjugates.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourQuadrature {
    gamma: f64,
    rho: f64,
    qubits: u32,
    nodes: Vec<Complex64>,
    weights: Vec<Complex64>,
}

impl ContourQuadrature {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `b_N`, the number of counting qubits.
    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    /// `N = 2^{b_N}`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn node(&self, k: usize) -> Complex64 {
        self.nodes[k]
    }

    pub fn weight(&self, k: usize) -> Complex64 {
        self.weights[k]
    }

    /// `f_N(lambda) = sum_k w_k / (z_k - lambda)`.
    pub fn filter_value(&self, lambda: f64) -> Complex64 {
        filter_value(self, lambda)
    }

    pub fn filter_closed_form(&self, lambda: f64) -> f64 {
        filter_closed_form(self, lambda)
    }
}

/// Builds the `N = 2^{b_N}` point trapezoidal rule on the circle of center
/// `gamma` and radius `rho`.
pub fn trapezoid_circle(gamma: f64, rho: f64, qubits: u32) -> Result<ContourQuadrature> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::InvalidRadius(rho));
    }
    if !(1..=MAX_QUADRATURE_QUBITS).contains(&qubits) {
        return Err(Error::NodeCountOutOfRange(qubits));
    }
    let n = 1usize << qubits;
    let half = n / 2;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    // Only the upper half-plane is evaluated; the lower half is its mirror so
    // the conjugate pairing holds bit-for-bit.
    for k in 0..half {
        let theta = 2.0 * PI * (k as f64 + 0.5) / n as f64;
        let unit = Complex64::new(theta.cos(), theta.sin());
        nodes.push(Complex64::new(gamma, 0.0) + unit * rho);
        weights.push(unit * (rho / n as f64));
    }
    for k in half..n {
        let mirror = n - 1 - k;
        nodes.push(nodes[mirror].conj());
        weights.push(weights[mirror].conj());
    }
    Ok(ContourQuadrature { gamma, rho, qubits, nodes, weights })
}

/// Circle crossing the real axis at `a` and `b`: `(gamma, rho) = ((a+b)/2, (b-a)/2)`.
pub fn interval_to_circle(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a < b) {
        return Err(Error::EmptyInterval { a, b });
    }
    Ok((0.5 * (a + b), 0.5 * (b - a)))
}

pub fn filter_value(q: &ContourQuadrature, lambda: f64) -> Complex64 {
    let half = q.len() / 2;
    // Pairs (k, N-1-k) are summed together so the imaginary parts cancel
    // symmetrically.
    (0..half)
        .map(|k| {
            let upper = q.weights[k] / (q.nodes[k] - lambda);
            let lower = q.weights[q.len() - 1 - k] / (q.nodes[q.len() - 1 - k] - lambda);
            upper + lower
        })
        .sum()
}

/// `1 / (1 + u^N)` with `u = (lambda - gamma) / rho`, evaluated as
/// `u^{-N} / (u^{-N} + 1)` when `|u| > 1`.
pub fn filter_closed_form(q: &ContourQuadrature, lambda: f64) -> f64 {
    let u = ((lambda - q.gamma) / q.rho).abs();
    let n = q.len() as i32;
    if u <= 1.0 {
        1.0 / (1.0 + u.powi(n))
    } else {
        let r = (1.0 / u).powi(n);
        r / (r + 1.0)
    }
}

/// Indicator of the open interval `(a, b)`.
pub fn indicator_g(lambda: f64, a: f64, b: f64) -> u8 {
    u8::from(a < lambda && lambda < b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn four_point_rule_nodes() {
        let q = trapezoid_circle(0.0, 1.0, 2).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(q.len(), 4);
        assert!(close(q.node(0), Complex64::new(h, h), 1e-15));
        assert!(close(q.weight(0), Complex64::new(h, h) / 4.0, 1e-15));
        assert_eq!(q.node(3), q.node(0).conj());
        assert_eq!(q.weight(3), q.weight(0).conj());
    }

    #[test]
    fn nodes_and_weights_match_formula() {
        for (gamma, rho, bits) in [(0.0, 1.0, 1), (-3.5, 0.25, 4), (10.0, 7.0, 7)] {
            let q = trapezoid_circle(gamma, rho, bits).unwrap();
            let n = q.len();
            for k in 0..n {
                let theta = 2.0 * PI * (k as f64 + 0.5) / n as f64;
                let e = Complex64::new(theta.cos(), theta.sin());
                assert!(close(q.node(k), gamma + e * rho, 1e-14 * (1.0 + gamma.abs() + rho)));
                assert!(close(q.weight(k), e * rho / n as f64, 1e-14));
                assert!(q.node(k).im.abs() >= rho * (PI / n as f64).sin() * (1.0 - 1e-12));
            }
            for k in 0..n / 2 {
                assert_eq!(q.node(k), q.node(n - 1 - k).conj());
                assert_eq!(q.weight(k), q.weight(n - 1 - k).conj());
            }
            let sum: Complex64 = q.weights().iter().sum();
            assert!(sum.norm() < 1e-15 * rho.max(1.0));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(trapezoid_circle(0.0, 0.0, 3).unwrap_err(), Error::InvalidRadius(0.0));
        assert_eq!(trapezoid_circle(0.0, -1.0, 3).unwrap_err(), Error::InvalidRadius(-1.0));
        assert!(matches!(trapezoid_circle(0.0, f64::NAN, 3), Err(Error::InvalidRadius(_))));
        assert_eq!(trapezoid_circle(0.0, 1.0, 0).unwrap_err(), Error::NodeCountOutOfRange(0));
        assert_eq!(trapezoid_circle(0.0, 1.0, 21).unwrap_err(), Error::NodeCountOutOfRange(21));
    }

    #[test]
    fn interval_mapping() {
        assert_eq!(interval_to_circle(-1.0, 1.0).unwrap(), (0.0, 1.0));
        assert_eq!(interval_to_circle(2.0, 6.0).unwrap(), (4.0, 2.0));
        assert_eq!(interval_to_circle(0.0, 0.0).unwrap_err(), Error::EmptyInterval { a: 0.0, b: 0.0 });
    }

    #[test]
    fn filter_reference_values() {
        let q = trapezoid_circle(0.0, 1.0, 2).unwrap();
        assert!(close(q.filter_value(0.0), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(q.filter_value(1.0), Complex64::new(0.5, 0.0), 1e-15));
        assert!(close(q.filter_value(-1.0), Complex64::new(0.5, 0.0), 1e-15));
        assert!(close(q.filter_value(2.0), Complex64::new(1.0 / 17.0, 0.0), 1e-15));

        let q8 = trapezoid_circle(1.0, 0.5, 3).unwrap();
        assert_eq!(q8.filter_closed_form(1.0), 1.0);
        assert_eq!(q8.filter_closed_form(1.5), 0.5);
        assert_eq!(q8.filter_closed_form(2.0), 1.0 / 257.0);
        assert_eq!(q8.filter_closed_form(0.0), 1.0 / 257.0);
    }

    #[test]
    fn closed_form_is_finite_for_large_orders() {
        let q = trapezoid_circle(0.0, 1.0, 20).unwrap();
        assert_eq!(q.filter_closed_form(3.0), 0.0);
        assert_eq!(q.filter_closed_form(0.5), 1.0);
        assert_eq!(q.filter_closed_form(1.0), 0.5);
    }

    #[test]
    fn indicator_is_open() {
        assert_eq!(indicator_g(0.5, 0.0, 1.0), 1);
        assert_eq!(indicator_g(1.0, 0.0, 1.0), 0);
        assert_eq!(indicator_g(0.0, 0.0, 1.0), 0);
        assert_eq!(indicator_g(-3.0, 0.0, 1.0), 0);
    }
}
