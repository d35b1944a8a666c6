use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix must have at least one row")]
    EmptyMatrix,
    #[error("shifted matrix is singular (pivot {pivot:e} at column {column})")]
    SingularShift { column: usize, pivot: f64 },
    #[error("dimension {dim} exceeds the limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("vector length {actual} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("contour radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("quadrature exponent {0} outside 1..=20")]
    NodeCountOutOfRange(u32),
    #[error("empty interval ({a}, {b})")]
    EmptyInterval { a: f64, b: f64 },
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("cannot normalize a zero vector")]
    ZeroVector,
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("rotation constant {c} exceeds the smallest singular value bound {bound}")]
    InvalidConstant { c: f64, bound: f64 },
    #[error("register layout {counting}+{system} qubits does not match length {len}")]
    RegisterMismatch { counting: u32, system: u32, len: usize },
    #[error("pad value {0} lies within the protected interval")]
    PadValueInsideInterval(f64),
    #[error("invalid request: {0}")]
    InvalidRequest(&'static str),
}

impl Error {
    /// Errors raised by arithmetic on valid inputs rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularShift { .. } | Error::NoConvergence | Error::InvalidConstant { .. }
        )
    }
}
