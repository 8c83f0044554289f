//! Dense matrices of polynomials, exact determinants, and exact rational
//! rank computation. No floating point: verdicts produced here are exact.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::Polynomial;

/// A dense row-major matrix of polynomials sharing one ambient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    ambient: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// Build from a generator; all entries must share `ambient`.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        ambient: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                if p.ambient() != ambient {
                    return Err(Error::AmbientMismatch {
                        left: ambient,
                        right: p.ambient(),
                    });
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            rows,
            cols,
            ambient,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    /// New matrix keeping the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<PolyMatrix> {
        for &c in columns {
            if c >= self.cols {
                return Err(Error::InvalidParameter(format!(
                    "column index {c} out of range for {} columns",
                    self.cols
                )));
            }
        }
        PolyMatrix::from_fn(self.rows, columns.len(), self.ambient, |i, j| {
            self.entry(i, columns[j]).clone()
        })
    }
}

/// Exact determinant by cofactor expansion along the first remaining row,
/// memoized on the set of surviving columns.
pub fn determinant(m: &PolyMatrix) -> Result<Polynomial> {
    if m.rows != m.cols {
        return Err(Error::NonSquareMatrix {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.cols > 64 {
        return Err(Error::GuardExceeded(format!(
            "cofactor determinant limited to 64 columns, got {}",
            m.cols
        )));
    }
    if m.rows == 0 {
        return Ok(Polynomial::one(m.ambient));
    }
    let full: u64 = if m.cols == 64 {
        u64::MAX
    } else {
        (1u64 << m.cols) - 1
    };
    let mut memo = std::collections::HashMap::new();
    det_rec(m, full, &mut memo)
}

fn det_rec(
    m: &PolyMatrix,
    mask: u64,
    memo: &mut std::collections::HashMap<u64, Polynomial>,
) -> Result<Polynomial> {
    if mask == 0 {
        return Ok(Polynomial::one(m.ambient));
    }
    if let Some(p) = memo.get(&mask) {
        return Ok(p.clone());
    }
    let row = m.rows - mask.count_ones() as usize;
    let mut acc = Polynomial::zero(m.ambient);
    let mut sign_positive = true;
    for col in 0..m.cols {
        let bit = 1u64 << col;
        if mask & bit == 0 {
            continue;
        }
        let entry = m.entry(row, col);
        if !entry.is_zero() {
            let minor = det_rec(m, mask & !bit, memo)?;
            let term = entry.mul(&minor)?;
            acc = if sign_positive {
                acc.add(&term)?
            } else {
                acc.sub(&term)?
            };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(mask, acc.clone());
    Ok(acc)
}

/// Rank of a dense rational matrix by Gaussian elimination, exact.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..ncols {
        // prefer a unit pivot to keep entries small
        let found = (pivot_row..nrows)
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| {
                let v = &rows[r][col];
                if v.is_one() || (-v).is_one() {
                    0u8
                } else {
                    1
                }
            });
        let Some(r) = found else { continue };
        rows.swap(pivot_row, r);
        let inv = BigRational::one() / rows[pivot_row][col].clone();
        for cell in rows[pivot_row][col..].iter_mut() {
            *cell = &*cell * &inv;
        }
        let (upper, lower) = rows.split_at_mut(pivot_row + 1);
        let pivot = &upper[pivot_row];
        for row in lower {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (cell, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *cell = &*cell - p * &factor;
            }
        }
        pivot_row += 1;
        rank += 1;
        if pivot_row == nrows {
            break;
        }
    }
    rank
}
