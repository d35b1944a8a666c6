//! Statevector simulation of the readout pipeline.
//!
//! Qubit layout: the counting register occupies the most significant qubits,
//! so basis index = `counting * 2^{b_n} + system`. Within the counting
//! register qubit `q` is bit `q` of the counting index (qubit `b_N - 1` is the
//! most significant). Gates in this module act on counting qubits only.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::augmented::{permutation_pi, solve_augmented, AugmentedSystem};
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, HermitianOperator, ShiftedLu, DEFAULT_EIG_CAP};

/// Largest `b_N` for [`qft_dense`].
pub const MAX_DENSE_QFT_QUBITS: u32 = 10;

/// Slack allowed on probabilities produced by floating-point simulation.
const PROBABILITY_SLACK: f64 = 1e-12;

/// Qubit counts of the two registers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Registers {
    pub counting: u32,
    pub system: u32,
}

impl Registers {
    pub fn new(counting: u32, system: u32) -> Self {
        Self { counting, system }
    }

    pub fn len(&self) -> usize {
        1usize << (self.counting + self.system)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn counting_len(&self) -> usize {
        1usize << self.counting
    }

    pub fn system_len(&self) -> usize {
        1usize << self.system
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    registers: Registers,
}

impl StateVector {
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn registers(&self) -> Registers {
        self.registers
    }

    pub fn amplitude(&self, counting: usize, system: usize) -> Complex64 {
        self.amplitudes[counting * self.registers.system_len() + system]
    }

    /// System-register slice for counting outcome `j`.
    pub fn counting_block(&self, j: usize) -> &[Complex64] {
        let s = self.registers.system_len();
        &self.amplitudes[j * s..(j + 1) * s]
    }

    pub fn norm_sq(&self) -> f64 {
        crate::norm_sq(&self.amplitudes)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amplitudes.len(),
                actual: other.amplitudes.len(),
            });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scaled(&self, phase: Complex64) -> StateVector {
        StateVector {
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
            registers: self.registers,
        }
    }

    /// Relabels the counting register by `Pi`.
    pub fn apply_block_permutation(&self) -> StateVector {
        apply_block_permutation(self)
    }

    pub fn apply_gates(&self, gates: &[Gate]) -> Result<StateVector> {
        let mut out = self.clone();
        for g in gates {
            out.apply_gate_in_place(g)?;
        }
        Ok(out)
    }

    fn apply_gate_in_place(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.registers.counting)?;
        let offset = self.registers.system as usize;
        let bit = |q: usize| 1usize << (q + offset);
        let amps = &mut self.amplitudes;
        match *gate {
            Gate::Hadamard { qubit } => {
                let m = bit(qubit);
                let h = core::f64::consts::FRAC_1_SQRT_2;
                for i in 0..amps.len() {
                    if i & m == 0 {
                        let (a0, a1) = (amps[i], amps[i | m]);
                        amps[i] = (a0 + a1) * h;
                        amps[i | m] = (a0 - a1) * h;
                    }
                }
            }
            Gate::ControlledPhase { control, target, angle } => {
                let m = bit(control) | bit(target);
                let phase = Complex64::new(angle.cos(), angle.sin());
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & m == m {
                        *a *= phase;
                    }
                }
            }
            Gate::Swap { a, b } => {
                let (ma, mb) = (bit(a), bit(b));
                for i in 0..amps.len() {
                    if i & ma != 0 && i & mb == 0 {
                        amps.swap(i, (i & !ma) | mb);
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (mc, mt) = (bit(control), bit(target));
                for i in 0..amps.len() {
                    if i & mc != 0 && i & mt == 0 {
                        amps.swap(i, i | mt);
                    }
                }
            }
        }
        Ok(())
    }
}

/// One- and two-qubit gates on the counting register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Hadamard { qubit: usize },
    /// `diag(1, 1, 1, e^{i angle})`.
    ControlledPhase { control: usize, target: usize, angle: f64 },
    Swap { a: usize, b: usize },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Hadamard { qubit } => (qubit, None),
            Gate::ControlledPhase { control, target, .. } => (control, Some(target)),
            Gate::Swap { a, b } => (a, Some(b)),
            Gate::Cnot { control, target } => (control, Some(target)),
        }
    }

    pub fn validate(&self, register_qubits: u32) -> Result<()> {
        let size = register_qubits as usize;
        let (a, b) = self.qubits();
        for q in core::iter::once(a).chain(b) {
            if q >= size {
                return Err(Error::IndexOutOfRange { index: q, size });
            }
        }
        if b == Some(a) {
            return Err(Error::InvalidRequest("two-qubit gate needs distinct qubits"));
        }
        Ok(())
    }
}

/// Normalizes `vec` into a state over the given registers.
pub fn prepare_state(vec: &[Complex64], registers: Registers) -> Result<StateVector> {
    if vec.len() != registers.len() {
        return Err(Error::RegisterMismatch {
            counting: registers.counting,
            system: registers.system,
            len: vec.len(),
        });
    }
    let norm = crate::norm_sq(vec).sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroVector);
    }
    Ok(StateVector { amplitudes: vec.iter().map(|a| a / norm).collect(), registers })
}

pub fn apply_block_permutation(state: &StateVector) -> StateVector {
    let count = state.registers.counting_len();
    let s = state.registers.system_len();
    if count < 2 {
        return state.clone();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
    for k in 0..count {
        let dst = permutation_pi(count, k).expect("power-of-two register");
        out[dst * s..(dst + 1) * s].copy_from_slice(&state.amplitudes[k * s..(k + 1) * s]);
    }
    StateVector { amplitudes: out, registers: state.registers }
}

/// Dense QFT with entries `e^{2 pi i jk / N} / sqrt(N)`, row-major.
pub fn qft_dense(qubits: u32) -> Result<Vec<Complex64>> {
    if !(1..=MAX_DENSE_QFT_QUBITS).contains(&qubits) {
        return Err(Error::InvalidRequest("dense QFT supports 1..=10 qubits"));
    }
    let n = 1usize << qubits;
    let scale = 1.0 / (n as f64).sqrt();
    let mut u = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let theta = 2.0 * PI * ((j * k) % n) as f64 / n as f64;
            u.push(Complex64::new(theta.cos(), theta.sin()) * scale);
        }
    }
    Ok(u)
}

/// Textbook QFT circuit: for each qubit from the most significant down, a
/// Hadamard followed by controlled phases `pi / 2^{j-m}` from every lower
/// qubit `m`, then swaps reversing the qubit order.
pub fn qft_gates(qubits: u32) -> Vec<Gate> {
    let b = qubits as usize;
    let mut gates = Vec::new();
    for target in (0..b).rev() {
        gates.push(Gate::Hadamard { qubit: target });
        for control in (0..target).rev() {
            let angle = PI / (1u64 << (target - control)) as f64;
            gates.push(Gate::ControlledPhase { control, target, angle });
        }
    }
    for i in 0..b / 2 {
        gates.push(Gate::Swap { a: i, b: b - 1 - i });
    }
    gates
}

/// Unitary of a gate list on `qubits` counting qubits, row-major, obtained by
/// simulating it on every basis state.
pub fn circuit_unitary(gates: &[Gate], qubits: u32) -> Result<Vec<Complex64>> {
    let n = 1usize << qubits;
    let registers = Registers::new(qubits, 0);
    let mut u = vec![Complex64::new(0.0, 0.0); n * n];
    for col in 0..n {
        let mut basis = vec![Complex64::new(0.0, 0.0); n];
        basis[col] = Complex64::new(1.0, 0.0);
        let state = StateVector { amplitudes: basis, registers }.apply_gates(gates)?;
        for (row, a) in state.amplitudes.iter().enumerate() {
            u[row * n + col] = *a;
        }
    }
    Ok(u)
}

/// `(U_QFT (x) I)` applied through the gate decomposition.
pub fn apply_qft_counting(state: &StateVector) -> StateVector {
    state
        .apply_gates(&qft_gates(state.registers.counting))
        .expect("QFT gates lie inside the counting register")
}

/// Probability of observing `j` on the counting register.
pub fn counting_probability(state: &StateVector, j: usize) -> Result<f64> {
    let count = state.registers.counting_len();
    if j >= count {
        return Err(Error::IndexOutOfRange { index: j, size: count });
    }
    Ok(crate::norm_sq(state.counting_block(j)))
}

pub fn counting_distribution(state: &StateVector) -> Vec<f64> {
    (0..state.registers.counting_len()).map(|j| crate::norm_sq(state.counting_block(j))).collect()
}

/// `||s||^2 = rho^2 p ||y||^2 / N`.
pub fn recover_s_norm_sq(p: f64, y_norm_sq: f64, rho: f64, node_count: usize) -> Result<f64> {
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if !(y_norm_sq >= 0.0) {
        return Err(Error::InvalidRequest("squared norm must be nonnegative"));
    }
    Ok(rho * rho * p * y_norm_sq / node_count as f64)
}

/// Output of the idealized HHL model.
#[derive(Debug, Clone, PartialEq)]
pub struct HhlOutcome {
    /// Normalized solution `|y>`.
    pub state: StateVector,
    /// `c^2 ||y||^2 / ||rhs||^2`.
    pub ancilla_zero_prob: f64,
    pub rhs_norm_sq: f64,
    pub constant: f64,
}

impl HhlOutcome {
    /// `||y||^2` recovered from the ancilla statistics.
    pub fn solution_norm_sq(&self) -> f64 {
        solution_norm_sq_from_ancilla(self.ancilla_zero_prob, self.rhs_norm_sq, self.constant)
    }
}

pub fn solution_norm_sq_from_ancilla(ancilla_zero_prob: f64, rhs_norm_sq: f64, constant: f64) -> f64 {
    ancilla_zero_prob * rhs_norm_sq / (constant * constant)
}

/// Rotation constant that is valid for every Hermitian `A`: the singular
/// values of `C` are `|z_k - lambda_j| >= |Im z_k| >= rho sin(pi / N)`.
pub fn safe_hhl_constant(sys: &AugmentedSystem) -> f64 {
    let q = sys.quadrature();
    q.rho() * (PI / q.len() as f64).sin()
}

/// Idealized HHL on the augmented system: returns the exact normalized
/// solution and the ancilla-zero probability `c^2 ||y||^2 / ||v'||^2`.
///
/// `c` must not exceed the smallest `|eigenvalue|` of `C`, which is
/// `min_{k,j} |z_k - lambda_j|`. Values up to [`safe_hhl_constant`] are
/// always accepted; larger values are checked against the eigenvalues of `A`
/// when it is small enough to diagonalize.
pub fn idealized_hhl(sys: &AugmentedSystem, c: f64) -> Result<HhlOutcome> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidConstant { c, bound: safe_hhl_constant(sys) });
    }
    if c > safe_hhl_constant(sys) && sys.block_dim() <= DEFAULT_EIG_CAP {
        let eigs = eig_hermitian(sys.operator())?;
        let bound = sys
            .shifts()
            .iter()
            .flat_map(|z| eigs.eigenvalues.iter().map(move |&l| (z - l).norm()))
            .fold(f64::INFINITY, f64::min);
        if c > bound {
            return Err(Error::InvalidConstant { c, bound });
        }
    }
    let registers = registers_for(sys)?;
    let layout = solve_augmented(sys)?;
    let rhs_norm_sq = crate::norm_sq(&sys.rhs());
    finish_hhl(&layout.y, rhs_norm_sq, c, registers)
}

/// Idealized HHL for a dense Hermitian system `C y = rhs`.
pub fn idealized_hhl_dense(
    c_matrix: &HermitianOperator,
    rhs: &[Complex64],
    c: f64,
    registers: Registers,
) -> Result<HhlOutcome> {
    let eigs = eig_hermitian(c_matrix)?;
    let bound = eigs.eigenvalues.iter().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
    if !(c > 0.0) || c > bound {
        return Err(Error::InvalidConstant { c, bound });
    }
    // (0 I - C) x = rhs gives x = -y
    let y: Vec<Complex64> =
        ShiftedLu::factor(c_matrix, Complex64::new(0.0, 0.0))?.solve(rhs)?.iter().map(|x| -x).collect();
    finish_hhl(&y, crate::norm_sq(rhs), c, registers)
}

fn finish_hhl(y: &[Complex64], rhs_norm_sq: f64, c: f64, registers: Registers) -> Result<HhlOutcome> {
    if rhs_norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let state = prepare_state(y, registers)?;
    let ancilla_zero_prob = c * c * crate::norm_sq(y) / rhs_norm_sq;
    if ancilla_zero_prob > 1.0 + PROBABILITY_SLACK {
        return Err(Error::InvalidConstant { c, bound: (rhs_norm_sq / crate::norm_sq(y)).sqrt() });
    }
    Ok(HhlOutcome { state, ancilla_zero_prob, rhs_norm_sq, constant: c })
}

/// Registers matching an augmented system; `n` must be a power of two.
pub fn registers_for(sys: &AugmentedSystem) -> Result<Registers> {
    let n = sys.block_dim();
    if !n.is_power_of_two() {
        return Err(Error::RegisterMismatch {
            counting: sys.quadrature().qubits(),
            system: 0,
            len: sys.dim(),
        });
    }
    Ok(Registers::new(sys.quadrature().qubits(), n.trailing_zeros()))
}

/// Accept probability `(1 + |<u|w>|^2) / 2` of the swap test.
pub fn swap_test_accept_prob(u: &StateVector, w: &StateVector) -> Result<f64> {
    let overlap = u.inner(w)?;
    Ok(0.5 * (1.0 + overlap.norm_sqr()))
}

/// Multinomial sample of `shots` computational-basis measurements.
/// `counts[i]` is the number of times basis state `i` was observed.
pub fn sample_counts(state: &StateVector, shots: u64, seed: u64) -> Vec<u64> {
    let mut cdf = Vec::with_capacity(state.amplitudes.len());
    let mut acc = 0.0;
    for a in &state.amplitudes {
        acc += a.norm_sqr();
        cdf.push(acc);
    }
    let total = acc;
    let mut counts = vec![0u64; cdf.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..shots {
        let r = rng.random::<f64>() * total;
        let idx = cdf.partition_point(|&c| c <= r).min(cdf.len() - 1);
        counts[idx] += 1;
    }
    counts
}

/// Quantities read out by one pass of the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReadout {
    /// Probability of counting outcome `1` after permutation and QFT.
    pub p: f64,
    pub y_norm_sq: f64,
    /// `rho^2 p ||y||^2 / N`.
    pub s_norm_sq: f64,
    pub output: StateVector,
}

/// Runs `|y> -> Pi -> QFT -> p` and recovers `||s||^2`, taking `||y||^2`
/// as given.
pub fn readout_from_state(y_state: &StateVector, y_norm_sq: f64, rho: f64) -> Result<PipelineReadout> {
    let permuted = apply_block_permutation(y_state);
    let output = apply_qft_counting(&permuted);
    let p = counting_probability(&output, 1)?;
    let s_norm_sq = recover_s_norm_sq(p, y_norm_sq, rho, y_state.registers.counting_len())?;
    Ok(PipelineReadout { p, y_norm_sq, s_norm_sq, output })
}

/// Pipeline with the exact augmented solve supplying `|y>` and `||y||^2`.
pub fn pipeline_exact(sys: &AugmentedSystem) -> Result<PipelineReadout> {
    let registers = registers_for(sys)?;
    let layout = solve_augmented(sys)?;
    let state = prepare_state(&layout.y, registers)?;
    readout_from_state(&state, layout.norm_sq(), sys.quadrature().rho())
}

/// Pipeline with the idealized HHL model supplying `|y>` and `||y||^2`
/// (the latter recovered from the ancilla-zero probability).
pub fn pipeline_hhl(sys: &AugmentedSystem, c: f64) -> Result<PipelineReadout> {
    let hhl = idealized_hhl(sys, c)?;
    readout_from_state(&hhl.state, hhl.solution_norm_sq(), sys.quadrature().rho())
}
