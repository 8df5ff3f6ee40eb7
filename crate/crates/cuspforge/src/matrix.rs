//! Exact matrices over Z[P] and two independent determinant engines:
//! fraction-free (Bareiss) elimination and the Hessenberg
//! leading-principal-minor recursion.

use num_bigint::BigInt;

use crate::error::CoreError;
use crate::poly::PolyZ;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixPoly {
    rows: usize,
    cols: usize,
    entries: Vec<PolyZ>, // row-major
}

impl MatrixPoly {
    pub fn new(rows: usize, cols: usize, entries: Vec<PolyZ>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        MatrixPoly { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixPoly {
            rows,
            cols,
            entries: vec![PolyZ::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixPoly::zeros(n, n);
        for i in 0..n {
            m.set(i, i, PolyZ::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> PolyZ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        MatrixPoly { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &PolyZ {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: PolyZ) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[PolyZ] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> MatrixPoly {
        MatrixPoly::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Submatrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> MatrixPoly {
        MatrixPoly::from_fn(self.rows - 1, self.cols - 1, |a, b| {
            let src_i = if a < i { a } else { a + 1 };
            let src_j = if b < j { b } else { b + 1 };
            self.get(src_i, src_j).clone()
        })
    }

    /// Leading principal n x n block.
    pub fn leading_block(&self, n: usize) -> MatrixPoly {
        MatrixPoly::from_fn(n, n, |i, j| self.get(i, j).clone())
    }

    /// Entrywise evaluation at an integer.
    pub fn eval(&self, x: &BigInt) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval(x)).collect())
            .collect()
    }

    fn require_square(&self) -> Result<usize, CoreError> {
        if !self.is_square() {
            return Err(CoreError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// First coordinate (i, j) with j > i + 1 and a nonzero entry, if any.
    fn hessenberg_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in (i + 2)..self.cols {
                if !self.get(i, j).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Fraction-free determinant. Every division in the elimination is exact over
/// Z[P]; an inexact division aborts (it signals an arithmetic bug, not bad
/// input). Zero pivots are handled by row swaps with sign tracking.
pub fn bareiss_det(m: &MatrixPoly) -> Result<PolyZ, CoreError> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(PolyZ::one());
    }
    let mut a: Vec<Vec<PolyZ>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = 1i32;
    let mut prev = PolyZ::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(PolyZ::zero()),
            }
        }
        let pivot = a[k][k].clone();
        let pivot_row = a[k].clone();
        let update_row = |row: &mut Vec<PolyZ>| -> Result<(), CoreError> {
            let head = row[k].clone();
            for j in k + 1..n {
                let num = &(&pivot * &row[j]) - &(&head * &pivot_row[j]);
                row[j] = num.exact_div(&prev)?;
            }
            row[k] = PolyZ::zero();
            Ok(())
        };
        #[cfg(feature = "parallel")]
        {
            a[k + 1..n]
                .par_iter_mut()
                .try_for_each(|row| update_row(row))?;
        }
        #[cfg(not(feature = "parallel"))]
        {
            for row in a[k + 1..n].iter_mut() {
                update_row(row)?;
            }
        }
        prev = pivot;
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { &PolyZ::zero() - &det } else { det })
}

/// Strictly sequential Bareiss elimination, kept for benchmarking against the
/// data-parallel path; identical results.
pub fn bareiss_det_seq(m: &MatrixPoly) -> Result<PolyZ, CoreError> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(PolyZ::one());
    }
    let mut a: Vec<Vec<PolyZ>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = 1i32;
    let mut prev = PolyZ::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(PolyZ::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
            a[i][k] = PolyZ::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { &PolyZ::zero() - &det } else { det })
}

/// Determinants of all leading principal blocks of a lower-Hessenberg matrix
/// (zero whenever j > i + 1), by the recursion
/// det(M(n)) = sum_k (-1)^(n-k) m[n][k] (prod_{j=k..n-1} m[j][j+1]) det(M(k-1))
/// with det(M(0)) = 1.
pub fn hessenberg_minors(m: &MatrixPoly) -> Result<Vec<PolyZ>, CoreError> {
    let n = m.require_square()?;
    if let Some((i, j)) = m.hessenberg_violation() {
        return Err(CoreError::NotHessenberg { i, j });
    }
    // dets[k] = det of leading k x k block; dets[0] = 1.
    let mut dets = Vec::with_capacity(n + 1);
    dets.push(PolyZ::one());
    for nn in 1..=n {
        // 1-based row nn has 0-based index nn-1.
        let mut acc = m.get(nn - 1, nn - 1) * &dets[nn - 1];
        let mut super_prod = PolyZ::one();
        for k in (1..nn).rev() {
            // superdiagonal entry m[k-1][k] (0-based) joins the product.
            super_prod = &super_prod * m.get(k - 1, k);
            let term = &(m.get(nn - 1, k - 1) * &super_prod) * &dets[k - 1];
            if (nn - k) % 2 == 1 {
                acc = &acc - &term;
            } else {
                acc = &acc + &term;
            }
        }
        dets.push(acc);
    }
    dets.remove(0);
    Ok(dets)
}

/// Determinant of a lower-Hessenberg matrix via the leading-principal-minor
/// recursion. The 0 x 0 matrix has determinant 1. Rejects non-Hessenberg
/// input, naming the violating entry; use [`MatrixPoly::transpose`] for the
/// opposite orientation.
pub fn hessenberg_det(m: &MatrixPoly) -> Result<PolyZ, CoreError> {
    let mut dets = hessenberg_minors(m)?;
    Ok(dets.pop().unwrap_or_else(PolyZ::one))
}

/// det(M(1)), ..., det(M(n)) over all leading principal blocks. Uses the
/// Hessenberg recursion when the shape allows, otherwise one Bareiss run per
/// block.
pub fn leading_principal_minors(m: &MatrixPoly) -> Result<Vec<PolyZ>, CoreError> {
    let n = m.require_square()?;
    if m.hessenberg_violation().is_none() {
        return hessenberg_minors(m);
    }
    (1..=n).map(|k| bareiss_det(&m.leading_block(k))).collect()
}
