//! Dense complex linear algebra: Hermitian storage, shifted solves and a
//! Hermitian eigensolver used as an exact oracle.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Largest tolerated `|a_ij - conj(a_ji)|` before ingestion is rejected.
pub const HERMITIAN_TOLERANCE: f64 = 1e-8;

/// Relative pivot magnitude below which a shifted matrix is treated as singular.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

/// Default dimension cap for [`eig_hermitian`].
pub const DEFAULT_EIG_CAP: usize = 1024;

/// Dense complex Hermitian matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianOperator {
    /// Validates a square matrix given as rows and symmetrizes it.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { row, len: r.len(), dim });
            }
            entries.extend_from_slice(r);
        }
        Self::from_row_major(dim, entries)
    }

    /// Validates a row-major `dim x dim` buffer and symmetrizes it as
    /// `(M + M^H) / 2`.
    pub fn from_row_major(dim: usize, mut entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(Error::NotSquare {
                row: entries.len() / dim,
                len: entries.len() % dim,
                dim,
            });
        }
        let mut asymmetry: f64 = 0.0;
        for i in 0..dim {
            for j in i..dim {
                let d = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
                if d.is_nan() {
                    return Err(Error::NotHermitian { asymmetry: f64::NAN });
                }
                asymmetry = asymmetry.max(d);
            }
        }
        if asymmetry > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { asymmetry });
        }
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(entries[i * dim + i].re, 0.0);
            for j in (i + 1)..dim {
                let avg = (entries[i * dim + j] + entries[j * dim + i].conj()) * 0.5;
                entries[i * dim + j] = avg;
                entries[j * dim + i] = avg.conj();
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(d, 0.0);
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "matvec dimension mismatch");
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Validates and symmetrizes a square complex matrix given as rows.
pub fn build_hermitian(rows: &[Vec<Complex64>]) -> Result<HermitianOperator> {
    HermitianOperator::from_rows(rows)
}

/// LU factorization (partial pivoting) of `zI - A`, reusable across
/// right-hand sides.
#[derive(Debug, Clone)]
pub struct ShiftedLu {
    dim: usize,
    shift: Complex64,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl ShiftedLu {
    pub fn factor(a: &HermitianOperator, shift: Complex64) -> Result<Self> {
        let n = a.dim;
        let mut lu: Vec<Complex64> = a.entries.iter().map(|&x| -x).collect();
        for i in 0..n {
            lu[i * n + i] += shift;
        }
        let threshold = PIVOT_TOLERANCE * a.frobenius_norm().max(shift.norm());
        let mut perm: Vec<usize> = (0..n).collect();

        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, lu[r * n + col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_mag <= threshold || pivot_mag == 0.0 {
                return Err(Error::SingularShift { column: col, pivot: pivot_mag });
            }
            if pivot_row != col {
                perm.swap(pivot_row, col);
                for k in 0..n {
                    lu.swap(pivot_row * n + k, col * n + k);
                }
            }
            let inv_pivot = lu[col * n + col].inv();
            for r in (col + 1)..n {
                let factor = lu[r * n + col] * inv_pivot;
                lu[r * n + col] = factor;
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in (col + 1)..n {
                    let upper = lu[col * n + k];
                    lu[r * n + k] -= factor * upper;
                }
            }
        }
        Ok(Self { dim: n, shift, lu, perm })
    }

    pub fn shift(&self) -> Complex64 {
        self.shift
    }

    pub fn solve(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim;
        if rhs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: rhs.len() });
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let acc: Complex64 = row.iter().zip(&x[..i]).map(|(l, xj)| l * xj).sum();
            x[i] -= acc;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            let acc: Complex64 = row.iter().zip(&x[i + 1..]).map(|(u, xj)| u * xj).sum();
            x[i] = (x[i] - acc) / self.lu[i * n + i];
        }
        Ok(x)
    }

    /// Solves `(zI - A)^H x = rhs`, i.e. the system for the conjugate shift,
    /// with the same factorization.
    pub fn solve_adjoint(&self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.dim;
        if rhs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: rhs.len() });
        }
        // M = P^T L U, so M^H = U^H L^H P.
        let mut w = rhs.to_vec();
        for i in 0..n {
            let acc: Complex64 = (0..i).map(|k| self.lu[k * n + i].conj() * w[k]).sum();
            w[i] = (w[i] - acc) / self.lu[i * n + i].conj();
        }
        for i in (0..n).rev() {
            let acc: Complex64 = ((i + 1)..n).map(|k| self.lu[k * n + i].conj() * w[k]).sum();
            w[i] -= acc;
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        Ok(x)
    }

    pub fn solve_real(&self, rhs: &[f64]) -> Result<Vec<Complex64>> {
        let rhs: Vec<Complex64> = rhs.iter().map(|&r| Complex64::new(r, 0.0)).collect();
        self.solve(&rhs)
    }
}

/// Solves `(zI - A) x = v` by dense LU.
pub fn solve_shifted(a: &HermitianOperator, z: Complex64, v: &[Complex64]) -> Result<Vec<Complex64>> {
    if v.len() != a.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, actual: v.len() });
    }
    ShiftedLu::factor(a, z)?.solve(v)
}

/// Eigenvalues in ascending order with the matching unitary eigenvector matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Row-major `n x n`; column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: Vec<Complex64>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, j: usize) -> Vec<Complex64> {
        let n = self.dim();
        (0..n).map(|i| self.eigenvectors[i * n + j]).collect()
    }
}

pub fn eig_hermitian(a: &HermitianOperator) -> Result<EigenDecomposition> {
    eig_hermitian_capped(a, DEFAULT_EIG_CAP)
}

/// Householder reduction to a real symmetric tridiagonal matrix followed by
/// implicit QL iterations.
pub fn eig_hermitian_capped(a: &HermitianOperator, cap: usize) -> Result<EigenDecomposition> {
    let n = a.dim;
    if n > cap {
        return Err(Error::DimensionTooLarge { dim: n, limit: cap });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut m = a.entries.clone();
    let mut q = vec![zero; n * n];
    for i in 0..n {
        q[i * n + i] = Complex64::new(1.0, 0.0);
    }

    for k in 0..n.saturating_sub(2) {
        let alpha_norm = ((k + 1)..n).map(|i| m[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = m[(k + 1) * n + k];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * alpha_norm;

        // v is zero above k+1
        let mut v = vec![zero; n];
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = m[i * n + k];
        }
        let v_norm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if v_norm_sq == 0.0 {
            continue;
        }
        let tau = 2.0 / v_norm_sq;

        let mut p = vec![zero; n];
        for i in 0..n {
            let row = &m[i * n..(i + 1) * n];
            p[i] = tau * ((k + 1)..n).map(|j| row[j] * v[j]).sum::<Complex64>();
        }
        let beta: Complex64 = ((k + 1)..n).map(|i| v[i].conj() * p[i]).sum();
        let kq = 0.5 * tau * beta.re;
        let w: Vec<Complex64> = (0..n).map(|i| p[i] - v[i] * kq).collect();
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] -= v[i] * w[j].conj() + w[i] * v[j].conj();
            }
        }
        for i in 0..n {
            let qv: Complex64 = ((k + 1)..n).map(|j| q[i * n + j] * v[j]).sum();
            let s = qv * tau;
            for j in (k + 1)..n {
                q[i * n + j] -= s * v[j].conj();
            }
        }
    }

    let mut diag: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    let mut off = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        let e = m[(k + 1) * n + k];
        let mag = e.norm();
        off[k] = mag;
        phases[k + 1] = if mag == 0.0 { phases[k] } else { phases[k] * e / mag };
    }

    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tridiagonal_ql(&mut diag, &mut off, &mut z)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let mut eigenvectors = vec![zero; n * n];
    for i in 0..n {
        for (col, &src) in order.iter().enumerate() {
            let mut acc = zero;
            for k in 0..n {
                acc += q[i * n + k] * phases[k] * z[k * n + src];
            }
            eigenvectors[i * n + col] = acc;
        }
    }
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
/// `off[k]` couples rows `k` and `k + 1`; `z` accumulates the rotations.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let f = z[k * n + i + 1];
                    z[k * n + i + 1] = s * z[k * n + i] + c * f;
                    z[k * n + i] = c * z[k * n + i] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
