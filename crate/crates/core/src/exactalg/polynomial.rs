//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::ExponentVector;

/// A polynomial as a finite map from monomials to nonzero rational
/// coefficients. Zero coefficients are never stored, so two polynomials are
/// equal iff their term maps are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ambient: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl Polynomial {
    pub fn zero(ambient: usize) -> Self {
        Polynomial {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: usize, c: BigRational) -> Self {
        let mut p = Polynomial::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(ExponentVector::constant(ambient), c);
        }
        p
    }

    pub fn one(ambient: usize) -> Self {
        Polynomial::constant(ambient, BigRational::one())
    }

    /// The variable `x_{var + 1}` (zero-based index).
    pub fn variable(ambient: usize, var: usize) -> Result<Self> {
        let m = ExponentVector::variable(ambient, var)?;
        Ok(Polynomial::from_monomial(m, BigRational::one()))
    }

    pub fn from_monomial(monomial: ExponentVector, coefficient: BigRational) -> Self {
        let mut p = Polynomial::zero(monomial.ambient());
        if !coefficient.is_zero() {
            p.terms.insert(monomial, coefficient);
        }
        p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial; zero if absent.
    pub fn coefficient(&self, m: &ExponentVector) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree of the polynomial if it is homogeneous, else `None`.
    /// The zero polynomial is homogeneous of every degree; returns `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        let first = match degs.next() {
            None => return Some(0),
            Some(d) => d,
        };
        degs.all(|d| d == first).then_some(first)
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    fn add_term(&mut self, m: ExponentVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        let mut out = Polynomial::zero(self.ambient);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ambient);
        }
        Polynomial {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // largest monomial first
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &BigRational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs.is_one() && !m.is_constant() {
                write!(f, "{m}")?;
            } else if m.is_constant() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
