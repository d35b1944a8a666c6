//! The half-size Hermitian augmented system that stacks all `N` shifted
//! solves, and the block permutation that restores quadrature order.
//!
//! With `A_k = z_k I - A` for the upper-half-plane nodes `k < N/2` and
//! `A' = A_0 (+) ... (+) A_{N/2-1}`, the system is
//!
//! ```text
//!     C = [ O     A'^H ]      v' = [v; v; ...; v]   (N copies)
//!         [ A'    O    ]
//! ```
//!
//! Since `A_k^H = z_{N-1-k} I - A`, the solution of `C y = v'` is
//! `y = [x_0, ..., x_{N/2-1}, x_{N-1}, ..., x_{N/2}]`. The off-diagonal
//! blocks are placed so that this block order holds as written; `C` has
//! dimension `nN`, half of the generic Hermitian dilation.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{solve_shifted, HermitianOperator};
use crate::quadrature::ContourQuadrature;
use crate::quantum::Gate;

/// Largest `n * N` for which `C` may be formed densely.
pub const MATERIALIZE_LIMIT: usize = 4096;

/// Largest `n * N` handled with implicit block application.
pub const IMPLICIT_LIMIT: usize = 1 << 26;

#[derive(Debug, Clone)]
pub struct AugmentedSystem {
    operator: HermitianOperator,
    quadrature: ContourQuadrature,
    probe: Vec<f64>,
}

impl AugmentedSystem {
    /// Dimension of `A`.
    pub fn block_dim(&self) -> usize {
        self.operator.dim()
    }

    /// Number of quadrature nodes `N`.
    pub fn block_count(&self) -> usize {
        self.quadrature.len()
    }

    /// Dimension of `C`, `n * N`.
    pub fn dim(&self) -> usize {
        self.block_dim() * self.block_count()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn quadrature(&self) -> &ContourQuadrature {
        &self.quadrature
    }

    pub fn probe(&self) -> &[f64] {
        &self.probe
    }

    /// Shifts `z_0..z_{N/2}` of the diagonal blocks of `A'`.
    pub fn shifts(&self) -> &[Complex64] {
        &self.quadrature.nodes()[..self.block_count() / 2]
    }

    /// Dense `A_k = z_k I - A`, row-major, for `k < N/2`.
    pub fn shifted_block(&self, k: usize) -> Result<Vec<Complex64>> {
        let half = self.block_count() / 2;
        if k >= half {
            return Err(Error::IndexOutOfRange { index: k, size: half });
        }
        let n = self.block_dim();
        let z = self.quadrature.node(k);
        let mut block: Vec<Complex64> = self.operator.as_slice().iter().map(|&a| -a).collect();
        for i in 0..n {
            block[i * n + i] += z;
        }
        Ok(block)
    }

    /// `v'`, `N` stacked copies of the probe.
    pub fn rhs(&self) -> Vec<Complex64> {
        let v: Vec<Complex64> = self.probe.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        let mut out = Vec::with_capacity(self.dim());
        for _ in 0..self.block_count() {
            out.extend_from_slice(&v);
        }
        out
    }

    /// `C y` without forming `C`.
    pub fn apply(&self, y: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = self.dim();
        if y.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, actual: y.len() });
        }
        let n = self.block_dim();
        let half = self.block_count() / 2;
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for p in 0..half {
            let z = self.quadrature.node(p);
            let top = &y[p * n..(p + 1) * n];
            let bottom = &y[(half + p) * n..(half + p + 1) * n];
            // upper rows: A_p^H y_bottom = conj(z) y_bottom - A y_bottom
            let a_bottom = self.operator.matvec(bottom);
            for i in 0..n {
                out[p * n + i] = z.conj() * bottom[i] - a_bottom[i];
            }
            let a_top = self.operator.matvec(top);
            for i in 0..n {
                out[(half + p) * n + i] = z * top[i] - a_top[i];
            }
        }
        Ok(out)
    }

    /// Dense `C`, row-major; only for `n * N <= MATERIALIZE_LIMIT`.
    pub fn materialize(&self) -> Result<Vec<Complex64>> {
        let dim = self.dim();
        if dim > MATERIALIZE_LIMIT {
            return Err(Error::DimensionTooLarge { dim, limit: MATERIALIZE_LIMIT });
        }
        let n = self.block_dim();
        let half = self.block_count() / 2;
        let mut c = vec![Complex64::new(0.0, 0.0); dim * dim];
        for p in 0..half {
            let block = self.shifted_block(p)?;
            let (top, bottom) = (p * n, (half + p) * n);
            for i in 0..n {
                for j in 0..n {
                    // lower-left A', upper-right A'^H
                    c[(bottom + i) * dim + top + j] = block[i * n + j];
                    c[(top + i) * dim + bottom + j] = block[j * n + i].conj();
                }
            }
        }
        Ok(c)
    }
}

pub fn build_augmented(a: &HermitianOperator, q: &ContourQuadrature, v: &[f64]) -> Result<AugmentedSystem> {
    if v.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), actual: v.len() });
    }
    let dim = a.dim() * q.len();
    if dim > IMPLICIT_LIMIT {
        return Err(Error::DimensionTooLarge { dim, limit: IMPLICIT_LIMIT });
    }
    Ok(AugmentedSystem { operator: a.clone(), quadrature: q.clone(), probe: v.to_vec() })
}

/// Solution `y` of `C y = v'` with its block order.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionLayout {
    pub y: Vec<Complex64>,
    pub block_dim: usize,
    /// `block_order[p]` is the quadrature index `k` whose `x_k` sits in block `p`.
    pub block_order: Vec<usize>,
}

impl SolutionLayout {
    pub fn block_count(&self) -> usize {
        self.block_order.len()
    }

    pub fn block(&self, p: usize) -> &[Complex64] {
        &self.y[p * self.block_dim..(p + 1) * self.block_dim]
    }

    /// `x_k`, wherever it sits in `y`.
    pub fn solution_for_node(&self, k: usize) -> &[Complex64] {
        let p = self.block_order.iter().position(|&idx| idx == k).expect("node index in range");
        self.block(p)
    }

    pub fn norm_sq(&self) -> f64 {
        crate::norm_sq(&self.y)
    }
}

/// Solves `C y = v'` one block at a time: block `p < N/2` is
/// `(z_p I - A) x_p = v`, block `N/2 + p` is `(z_p I - A)^H x_{N-1-p} = v`.
pub fn solve_augmented(sys: &AugmentedSystem) -> Result<SolutionLayout> {
    let n = sys.block_dim();
    let count = sys.block_count();
    let half = count / 2;
    let v: Vec<Complex64> = sys.probe.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let mut y = vec![Complex64::new(0.0, 0.0); n * count];
    for p in 0..half {
        let z = sys.quadrature.node(p);
        let top = solve_shifted(&sys.operator, z, &v)?;
        let bottom = solve_shifted(&sys.operator, z.conj(), &v)?;
        y[p * n..(p + 1) * n].copy_from_slice(&top);
        y[(half + p) * n..(half + p + 1) * n].copy_from_slice(&bottom);
    }
    let block_order = (0..count).map(|p| permutation_pi(count, p)).collect::<Result<Vec<_>>>()?;
    Ok(SolutionLayout { y, block_dim: n, block_order })
}

/// `Pi(k) = k` for `k < N/2`, otherwise `3N/2 - k - 1`. An involution.
pub fn permutation_pi(count: usize, k: usize) -> Result<usize> {
    if !count.is_power_of_two() || count < 2 {
        return Err(Error::InvalidRequest("node count must be a power of two >= 2"));
    }
    if k >= count {
        return Err(Error::IndexOutOfRange { index: k, size: count });
    }
    Ok(if k < count / 2 { k } else { 3 * count / 2 - k - 1 })
}

/// `b_N - 1` CNOTs controlled by the most significant counting qubit, one on
/// each lower qubit. When the MSB is set every lower bit flips, which is `Pi`.
pub fn permutation_as_cnots(qubits: u32) -> Vec<Gate> {
    if qubits == 0 {
        return Vec::new();
    }
    let msb = qubits as usize - 1;
    (0..msb).map(|target| Gate::Cnot { control: msb, target }).collect()
}

/// `y' = [x_0, ..., x_{N-1}]`, i.e. `(Pi (x) I_n) y`.
pub fn reorder_to_yprime(layout: &SolutionLayout) -> Vec<Complex64> {
    permute_blocks(&layout.y, layout.block_dim)
}

/// Moves block `k` of `y` to block `Pi(k)`.
pub fn permute_blocks(y: &[Complex64], block_dim: usize) -> Vec<Complex64> {
    let count = y.len() / block_dim;
    let mut out = vec![Complex64::new(0.0, 0.0); y.len()];
    for k in 0..count {
        let dst = permutation_pi(count, k).expect("block count is a power of two");
        out[dst * block_dim..(dst + 1) * block_dim].copy_from_slice(&y[k * block_dim..(k + 1) * block_dim]);
    }
    out
}
