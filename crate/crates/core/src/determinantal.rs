//! The banded variable matrix whose maximal minors generate a power of the
//! irrelevant ideal, with two independent verification routes.
//!
//! `M(n, r)` is the `r x (n+r-1)` Toeplitz band whose row `i` carries
//! `x_1 .. x_n` starting in column `i`. Every `r x r` column selection is
//! described by a tuple `alpha` of column multiplicities summing to `r`, and
//! the determinant of the selected square matrix opens with the monomial
//! `x^alpha` followed by strictly smaller monomials. That observation drives
//! both routes implemented here:
//!
//! * a span check: the coefficient matrix of all maximal minors over the
//!   degree-`r` monomial basis has full rank iff the minors span the whole
//!   power of the ideal;
//! * a certificate construction processing monomials in increasing order,
//!   expressing each as an explicit rational combination of minors, verified
//!   by exact expansion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{binomial, ExponentVector, Polynomial};
use crate::linalg::{determinant, rational_rank, PolyMatrix};

/// Default cap on the number of maximal minors materialized by
/// [`verify_minor_ideal`].
pub const DEFAULT_MINOR_GUARD: u64 = 100_000;

/// Default cap on the scalar matrix height in [`surjective_in_degree`].
pub const DEFAULT_DIMENSION_GUARD: u64 = 10_000;

/// The `r x (n+r-1)` band matrix with entry `(i, j) = x_{j-i+1}` where the
/// subscript is in range, zero elsewhere (one-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandMatrix {
    variables: u32,
    band_rows: u32,
    matrix: PolyMatrix,
}

/// Construct `M(n, r)`.
pub fn build_band_matrix(n: u32, r: u32) -> Result<BandMatrix> {
    if n < 1 || r < 1 {
        return Err(Error::InvalidParameter(
            "band matrix needs n >= 1 and r >= 1".into(),
        ));
    }
    let rows = r as usize;
    let cols = (n + r - 1) as usize;
    let ambient = n as usize;
    let matrix = PolyMatrix::from_fn(rows, cols, ambient, |i, j| {
        if j >= i && j - i < ambient {
            Polynomial::variable(ambient, j - i).expect("index in range")
        } else {
            Polynomial::zero(ambient)
        }
    })?;
    Ok(BandMatrix {
        variables: n,
        band_rows: r,
        matrix,
    })
}

impl BandMatrix {
    pub fn variables(&self) -> u32 {
        self.variables
    }

    pub fn band_rows(&self) -> u32 {
        self.band_rows
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    fn select(&self, sel: &ColumnSelection) -> Result<PolyMatrix> {
        if sel.variables != self.variables || sel.band_rows != self.band_rows {
            return Err(Error::InvalidParameter(format!(
                "selection for M({}, {}) applied to M({}, {})",
                sel.variables, sel.band_rows, self.variables, self.band_rows
            )));
        }
        self.matrix.select_columns(&sel.columns)
    }
}

/// A choice of `r` columns of `M(n, r)` described by multiplicities
/// `alpha = (alpha_1, ..., alpha_n)` with `sum(alpha) = r`: within the block
/// of rows assigned to variable `x_{k+1}`, row `j` picks the column where
/// `x_{k+1}` sits on row `j`, which is column `j + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSelection {
    variables: u32,
    band_rows: u32,
    alpha: Vec<u32>,
    columns: Vec<usize>,
}

impl ColumnSelection {
    pub fn new(n: u32, r: u32, alpha: Vec<u32>) -> Result<Self> {
        if alpha.len() != n as usize {
            return Err(Error::InvalidParameter(format!(
                "alpha has {} parts, expected {n}",
                alpha.len()
            )));
        }
        let sum: u64 = alpha.iter().map(|&a| a as u64).sum();
        if sum != r as u64 {
            return Err(Error::BadColumnSelection {
                sum,
                expected: r as u64,
            });
        }
        let mut columns = Vec::with_capacity(r as usize);
        let mut row = 0usize; // zero-based j - 1
        for (k, &count) in alpha.iter().enumerate() {
            for _ in 0..count {
                columns.push(row + k);
                row += 1;
            }
        }
        Ok(ColumnSelection {
            variables: n,
            band_rows: r,
            alpha,
            columns,
        })
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    /// Resolved zero-based column indices into `M(n, r)`.
    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// The monomial `x^alpha` this selection opens with.
    pub fn target_monomial(&self) -> ExponentVector {
        ExponentVector::new(self.alpha.clone())
    }
}

/// Materialize the square submatrix selected by `sel`.
pub fn build_submatrix(sel: &ColumnSelection) -> Result<PolyMatrix> {
    build_band_matrix(sel.variables, sel.band_rows)?.select(sel)
}

/// All exponent tuples on `n` variables with total degree `r`, in increasing
/// monomial order.
pub fn degree_monomials(n: u32, r: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n as usize];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        for v in (0..=left).rev() {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    if n > 0 {
        rec(0, r, &mut cur, &mut out);
    }
    out
}

/// Verdict of the span check on the maximal minors of `M(n, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinorIdealVerdict {
    pub holds: bool,
    pub rank_found: u64,
    pub expected_rank: u64,
    pub minor_count: u64,
}

/// Span check: expand every maximal minor of `M(n, r)` over the degree-`r`
/// monomial basis and test whether the coefficient matrix has full rank
/// `C(n+r-1, n-1)`. Full rank means the minors span the entire degree-`r`
/// piece, i.e. the minor ideal is the `r`-th power of the irrelevant ideal.
pub fn verify_minor_ideal(n: u32, r: u32, max_minors: u64) -> Result<MinorIdealVerdict> {
    if n < 1 || r < 1 {
        return Err(Error::InvalidParameter(
            "span check needs n >= 1 and r >= 1".into(),
        ));
    }
    let minor_count = binomial((n + r - 1) as u64, r as i64);
    if minor_count > BigInt::from(max_minors) {
        return Err(Error::GuardExceeded(format!(
            "{minor_count} maximal minors exceed the cap {max_minors}; \
             use the certificate route for single monomials"
        )));
    }
    let band = build_band_matrix(n, r)?;
    let basis = degree_monomials(n, r);
    let index: BTreeMap<&ExponentVector, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut rows = Vec::with_capacity(basis.len());
    for alpha in &basis {
        let sel = ColumnSelection::new(n, r, alpha.exponents().to_vec())?;
        let det = determinant(&band.select(&sel)?)?;
        debug_assert!(det.homogeneous_degree() == Some(r as u64) || det.is_zero());
        let mut row = vec![BigRational::zero(); basis.len()];
        for (m, c) in det.terms() {
            row[index[m]] = c.clone();
        }
        rows.push(row);
    }
    let rank_found = rational_rank(rows) as u64;
    let expected_rank = basis.len() as u64;
    Ok(MinorIdealVerdict {
        holds: rank_found == expected_rank,
        rank_found,
        expected_rank,
        minor_count: expected_rank,
    })
}

/// An explicit rational combination of maximal minors equal to one target
/// monomial, witnessing its membership in the minor ideal.
#[derive(Debug, Clone)]
pub struct MinorCertificate {
    target: ExponentVector,
    terms: Vec<(Polynomial, ColumnSelection)>,
    target_sign: i8,
}

impl MinorCertificate {
    pub fn target(&self) -> &ExponentVector {
        &self.target
    }

    /// `(coefficient, column selection)` pairs; the certificate asserts that
    /// the sum of `coefficient * det(submatrix(selection))` equals the target.
    pub fn terms(&self) -> &[(Polynomial, ColumnSelection)] {
        &self.terms
    }

    /// Sign of the target monomial inside its own opening minor; observed to
    /// be `+1` everywhere, recorded rather than assumed.
    pub fn target_sign(&self) -> i8 {
        self.target_sign
    }

    /// Expand the certificate to a polynomial by exact arithmetic.
    pub fn expand(&self) -> Result<Polynomial> {
        let n = self.target.ambient();
        let mut acc = Polynomial::zero(n);
        for (coeff, sel) in &self.terms {
            let det = determinant(&build_submatrix(sel)?)?;
            acc = acc.add(&coeff.mul(&det)?)?;
        }
        Ok(acc)
    }

    /// True iff the expansion reproduces exactly the target monomial.
    pub fn verify(&self) -> Result<bool> {
        let expected = Polynomial::from_monomial(self.target.clone(), BigRational::one());
        Ok(self.expand()? == expected)
    }
}

/// Construct expansion-verified certificates for every monomial of degree
/// `r` on `n` variables, in increasing monomial order.
///
/// Monomials are processed smallest first so that, when the determinant of a
/// monomial's opening minor contains other monomials, those are already
/// certified and can be subtracted. A monomial whose opening minor misses it,
/// carries it with a non-unit coefficient, or contains a *larger* monomial
/// would break the construction; that has never been observed and reports a
/// structured error identifying the offending tuple.
pub fn all_monomial_certificates(n: u32, r: u32) -> Result<Vec<MinorCertificate>> {
    if n < 1 || r < 1 {
        return Err(Error::InvalidParameter(
            "certificates need n >= 1 and r >= 1".into(),
        ));
    }
    let band = build_band_matrix(n, r)?;
    let targets = degree_monomials(n, r); // already in increasing order
    debug_assert!(targets.windows(2).all(|w| w[0] < w[1]));

    // per-target combination of minors, keyed by alpha
    let mut combos: BTreeMap<ExponentVector, BTreeMap<Vec<u32>, BigRational>> = BTreeMap::new();
    let mut dets: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    let mut out = Vec::with_capacity(targets.len());

    for target in targets {
        let alpha = target.exponents().to_vec();
        let sel = ColumnSelection::new(n, r, alpha.clone())?;
        let det = determinant(&band.select(&sel)?)?;
        let lead = det.coefficient(&target);
        let sign = if lead == BigRational::one() {
            1i8
        } else if lead == -BigRational::one() {
            -1
        } else {
            return Err(Error::CertificateFailed {
                alpha,
                reason: format!("opening minor carries the target with coefficient {lead}"),
            });
        };

        let mut combo: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        combo.insert(alpha.clone(), BigRational::from_integer(BigInt::from(sign)));
        for (m, c) in det.terms() {
            if *m == target {
                continue;
            }
            if *m > target {
                return Err(Error::CertificateFailed {
                    alpha,
                    reason: format!("opening minor contains the larger monomial {m}"),
                });
            }
            let Some(prior) = combos.get(m) else {
                return Err(Error::CertificateFailed {
                    alpha,
                    reason: format!("smaller monomial {m} lacks a prior certificate"),
                });
            };
            let scale = c * BigRational::from_integer(BigInt::from(sign));
            for (a2, c2) in prior {
                let entry = combo.entry(a2.clone()).or_insert_with(BigRational::zero);
                *entry -= &scale * c2;
            }
        }
        combo.retain(|_, c| !c.is_zero());
        dets.insert(alpha.clone(), det);

        // exact expansion check before emitting
        let mut expansion = Polynomial::zero(n as usize);
        for (a2, c2) in &combo {
            let det2 = match dets.get(a2) {
                Some(d) => d.clone(),
                None => {
                    let s2 = ColumnSelection::new(n, r, a2.clone())?;
                    let d2 = determinant(&band.select(&s2)?)?;
                    dets.insert(a2.clone(), d2.clone());
                    d2
                }
            };
            expansion = expansion.add(&det2.scale(c2))?;
        }
        let want = Polynomial::from_monomial(target.clone(), BigRational::one());
        if expansion != want {
            return Err(Error::CertificateFailed {
                alpha,
                reason: format!("expansion produced {expansion} instead of {target}"),
            });
        }

        let terms = combo
            .iter()
            .map(|(a2, c2)| {
                Ok((
                    Polynomial::constant(n as usize, c2.clone()),
                    ColumnSelection::new(n, r, a2.clone())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(MinorCertificate {
            target: target.clone(),
            terms,
            target_sign: sign,
        });
        combos.insert(target, combo);
    }
    Ok(out)
}

/// Certificate for a single degree-`r` monomial; runs the increasing-order
/// construction up to the target.
pub fn monomial_certificate(n: u32, r: u32, target: &ExponentVector) -> Result<MinorCertificate> {
    if target.ambient() != n as usize {
        return Err(Error::AmbientMismatch {
            left: n as usize,
            right: target.ambient(),
        });
    }
    if target.total_degree() != r as u64 {
        return Err(Error::InvalidParameter(format!(
            "target {target} has degree {}, expected {r}",
            target.total_degree()
        )));
    }
    all_monomial_certificates(n, r)?
        .into_iter()
        .find(|c| c.target() == target)
        .ok_or_else(|| Error::CertificateFailed {
            alpha: target.exponents().to_vec(),
            reason: "target not reached by the certificate chain".into(),
        })
}

/// Verdict of the graded surjectivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurjectivityVerdict {
    pub surjective: bool,
    pub rank_found: u64,
    pub required_rank: u64,
    pub domain_dimension: u64,
}

/// Test whether the map given by `M(n, k)` from `n+k-1` degree-shifted copies
/// of the polynomial ring onto `k` copies is surjective in degree `j`: build
/// the scalar matrix of the degree-`j` graded component over the monomial
/// bases and check full row rank `k * C(j+n-1, n-1)`.
pub fn surjective_in_degree(n: u32, k: u32, j: u32, max_dim: u64) -> Result<SurjectivityVerdict> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    if k == 0 {
        // zero target module; nothing to cover
        return Ok(SurjectivityVerdict {
            surjective: true,
            rank_found: 0,
            required_rank: 0,
            domain_dimension: 0,
        });
    }
    let target_basis = degree_monomials(n, j);
    let required = k as u64 * target_basis.len() as u64;
    if required > max_dim {
        return Err(Error::GuardExceeded(format!(
            "scalar matrix height {required} exceeds the cap {max_dim}"
        )));
    }
    let domain_basis = if j == 0 {
        Vec::new()
    } else {
        degree_monomials(n, j - 1)
    };
    let cols_per_copy = domain_basis.len();
    let copies = (n + k - 1) as usize;
    let domain_dim = copies * cols_per_copy;

    let index: BTreeMap<&ExponentVector, usize> = target_basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();

    let mut rows = vec![vec![BigRational::zero(); domain_dim]; k as usize * target_basis.len()];
    for c in 0..copies {
        for (vi, v) in domain_basis.iter().enumerate() {
            let col = c * cols_per_copy + vi;
            for t in 0..k as usize {
                // entry (t, c) of the band matrix is x_{c-t+1} when in range
                if c < t || c - t >= n as usize {
                    continue;
                }
                let var = ExponentVector::variable(n as usize, c - t).expect("in range");
                let u = v.mul(&var).expect("same ambient");
                let row = t * target_basis.len() + index[&u];
                rows[row][col] = BigRational::one();
            }
        }
    }
    let rank_found = rational_rank(rows) as u64;
    Ok(SurjectivityVerdict {
        surjective: rank_found == required,
        rank_found,
        required_rank: required,
        domain_dimension: domain_dim as u64,
    })
}
