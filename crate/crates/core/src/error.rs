//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values live in polynomial rings with different variable counts.
    #[error("ambient variable count mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    /// A parameter failed validation before any computation started.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `p` must be prime for Frobenius computations.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// The exact decomposition path requires gcd(p, d) = 1.
    #[error("p = {p} divides into d = {d} (gcd != 1); use the experimental general decomposition")]
    NotCoprime { p: u64, d: u64 },

    /// A resource guard was exceeded; the computation was not attempted.
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    /// Determinants are only defined for square matrices.
    #[error("matrix is not square: {rows} x {cols}")]
    NonSquareMatrix { rows: usize, cols: usize },

    /// Column multiplicities of a square submatrix must sum to the row count.
    #[error("column multiplicities sum to {sum}, expected {expected}")]
    BadColumnSelection { sum: u64, expected: u64 },

    /// The certificate induction could not continue; carries the offending
    /// exponent tuple and the reason.
    #[error("certificate construction failed at {alpha:?}: {reason}")]
    CertificateFailed { alpha: Vec<u32>, reason: String },

    /// The experimental decomposition path failed its runtime consistency
    /// check; the result is withheld rather than returned wrong.
    #[error("experimental decomposition is inconsistent: {0}")]
    InconsistentDecomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
