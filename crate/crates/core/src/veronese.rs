//! The degree-`d` Veronese subring of a polynomial ring on `n` variables and
//! its graded classes.
//!
//! The polynomial ring splits as a direct sum of the submodules spanned by
//! monomials of total degree congruent to `j` mod `d`, for `j = 0..d`. All
//! module-level statements are reduced to counting statements: generator
//! counts, Hilbert functions, and multiplicities. No symbolic module objects
//! are materialized.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::binomial;

/// Ambient data: `n` variables, Veronese degree `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VeroneseContext {
    variables: u32,
    degree: u32,
}

impl VeroneseContext {
    pub fn new(variables: u32, degree: u32) -> Result<Self> {
        if variables < 1 {
            return Err(Error::InvalidParameter(
                "variable count must be at least 1".into(),
            ));
        }
        if degree < 1 {
            return Err(Error::InvalidParameter(
                "Veronese degree must be at least 1".into(),
            ));
        }
        Ok(VeroneseContext { variables, degree })
    }

    /// Number of ambient variables `n`.
    pub fn variables(&self) -> u32 {
        self.variables
    }

    /// Veronese degree `d`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The residue class carrying the canonical module: `(-n) mod d`.
    ///
    /// The degrees supported by the canonical module are `-n + i*d`, so its
    /// class is the residue of `-n`, not of `n`. Only this choice closes the
    /// generator-count algebra: `C(n+k, n) / C(n+k-1, n-1) = (n+k)/n` equals
    /// `d/n * ceil(n/d)` exactly when `n + k` is divisible by `d`.
    pub fn canonical_class(&self) -> GradedClass {
        let n = self.variables % self.degree;
        GradedClass((self.degree - n) % self.degree)
    }

    pub fn class(&self, j: u32) -> Result<GradedClass> {
        if j >= self.degree {
            return Err(Error::InvalidParameter(format!(
                "class index {j} out of range 0..{}",
                self.degree
            )));
        }
        Ok(GradedClass(j))
    }

    /// Minimal number of generators of the class-`j` summand as a module over
    /// the Veronese subring: `C(n + j - 1, n - 1)`.
    pub fn min_generators(&self, cls: GradedClass) -> BigInt {
        let n = self.variables as u64;
        binomial(n + cls.0 as u64 - 1, n as i64 - 1)
    }

    /// Dimension of the `i`-th graded piece of the class-`j` summand in the
    /// Veronese grading: the count of monomials of total degree `j + i*d`.
    pub fn hilbert_function(&self, cls: GradedClass, i: u64) -> BigInt {
        let n = self.variables as u64;
        let t = cls.0 as u64 + i * self.degree as u64;
        binomial(n - 1 + t, n as i64 - 1)
    }
}

/// Residue index `j` of a graded class, `0 <= j < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedClass(u32);

impl GradedClass {
    pub fn index(&self) -> u32 {
        self.0
    }
}
