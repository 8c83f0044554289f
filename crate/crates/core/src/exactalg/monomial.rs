//! Exponent vectors and the monomial order used throughout.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A monomial `x_1^{c_1} ... x_n^{c_n}` stored as its exponent tuple.
///
/// The ambient variable count `n` is the tuple length and is fixed per
/// context; operations mixing different ambients fail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    /// The constant monomial `1` on `n` variables.
    pub fn constant(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The single variable `x_{var + 1}` (zero-based index) on `n` variables.
    pub fn variable(n: usize, var: usize) -> Result<Self> {
        if var >= n {
            return Err(Error::InvalidParameter(format!(
                "variable index {var} out of range for {n} variables"
            )));
        }
        let mut exps = vec![0; n];
        exps[var] = 1;
        Ok(ExponentVector(exps))
    }

    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of two monomials: exponentwise sum.
    pub fn mul(&self, other: &ExponentVector) -> Result<ExponentVector> {
        check_ambient(self, other)?;
        Ok(ExponentVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

fn check_ambient(a: &ExponentVector, b: &ExponentVector) -> Result<()> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch {
            left: a.ambient(),
            right: b.ambient(),
        });
    }
    Ok(())
}

/// The monomial order `x_1 < x_2 < ... < x_n`: at the first position where two
/// exponent tuples differ, the one with the larger exponent is the *smaller*
/// monomial. `x_1^r` is the minimum among all monomials of degree `r`, and a
/// monomial shrinks when weight moves from later variables onto earlier ones.
pub fn lex_compare(a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
    check_ambient(a, b)?;
    Ok(lex_cmp_unchecked(a, b))
}

fn lex_cmp_unchecked(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0) {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ambients are uniform inside any one polynomial; the length
        // comparison only orders across contexts so that Ord stays total.
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| lex_cmp_unchecked(self, other))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(exps: &[u32]) -> ExponentVector {
        ExponentVector::new(exps.to_vec())
    }

    #[test]
    fn x1_squared_below_x1_x2() {
        assert_eq!(
            lex_compare(&ev(&[2, 0]), &ev(&[1, 1])).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn compare_is_reflexive() {
        let m = ev(&[3, 1, 2]);
        assert_eq!(lex_compare(&m, &m).unwrap(), Ordering::Equal);
    }

    #[test]
    fn x2_above_x1_pow5() {
        assert_eq!(
            lex_compare(&ev(&[0, 1]), &ev(&[5, 0])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(lex_compare(&ev(&[1]), &ev(&[1, 0])).is_err());
    }

    /// Brute-force cross-check on two variables up to degree 5: sorting all
    /// monomials must put higher x1-weight first within every comparison.
    #[test]
    fn order_agrees_with_enumeration_two_vars() {
        let mut monos = Vec::new();
        for a in 0..=5u32 {
            for b in 0..=5u32 {
                if a + b <= 5 {
                    monos.push(ev(&[a, b]));
                }
            }
        }
        monos.sort();
        for w in monos.windows(2) {
            let (m1, m2) = (&w[0], &w[1]);
            assert_eq!(lex_compare(m1, m2).unwrap(), Ordering::Less);
            // moving all weight onto x1 can only move a monomial down
            let e1 = m1.exponents();
            let e2 = m2.exponents();
            assert!(e1 != e2);
            let i = if e1[0] != e2[0] { 0 } else { 1 };
            assert!(e1[i] > e2[i]);
        }
        // x2 sorts after x1^5 even though the degrees differ
        assert!(ev(&[0, 1]) > ev(&[5, 0]));
    }

    #[test]
    fn x1_power_is_minimal_per_degree() {
        // exhaustive for n <= 4, r <= 8
        for n in 1..=4usize {
            for r in 1..=8u32 {
                let min = {
                    let mut exps = vec![0; n];
                    exps[0] = r;
                    ExponentVector::new(exps)
                };
                for m in degree_monomials(n, r) {
                    if m != min {
                        assert_eq!(lex_compare(&min, &m).unwrap(), Ordering::Less);
                    }
                }
            }
        }
    }

    fn degree_monomials(n: usize, r: u32) -> Vec<ExponentVector> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(ExponentVector::new(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[i] = v;
                rec(i + 1, left - v, cur, out);
            }
        }
        rec(0, r, &mut cur, &mut out);
        out
    }

    #[test]
    fn display_format() {
        assert_eq!(ev(&[0, 0]).to_string(), "1");
        assert_eq!(ev(&[2, 0, 1]).to_string(), "x1^2*x3");
        assert_eq!(ev(&[1, 1]).to_string(), "x1*x2");
    }
}
