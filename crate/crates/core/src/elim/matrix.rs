//! Matrices of polynomials and exact determinants.

use crate::error::{Error, Result};
use crate::polyring::{IntPoly, Polynomial, Rational, VarSet};
use num_traits::{One, Zero};

/// Dense matrix of polynomials over one variable set. Rows and columns may
/// carry exponent labels (the Dixon monomials they stand for).
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    vars: VarSet,
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial>,
    row_labels: Vec<Vec<u32>>,
    col_labels: Vec<Vec<u32>>,
}

impl PolyMatrix {
    pub fn from_rows(vars: &VarSet, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::Dimension("ragged matrix rows".into()));
            }
            for e in r {
                if e.varset() != vars {
                    return Err(Error::VarSetMismatch);
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { vars: vars.clone(), nrows, ncols, entries, row_labels: Vec::new(), col_labels: Vec::new() })
    }

    /// Integer matrix, convenient for tests and small examples.
    pub fn from_ints(vars: &VarSet, rows: &[&[i64]]) -> Result<PolyMatrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Polynomial::constant(vars, &Rational::from_integer(v.into()))).collect())
            .collect();
        PolyMatrix::from_rows(vars, rows)
    }

    pub(crate) fn with_labels(mut self, rows: Vec<Vec<u32>>, cols: Vec<Vec<u32>>) -> PolyMatrix {
        debug_assert_eq!(rows.len(), self.nrows);
        debug_assert_eq!(cols.len(), self.ncols);
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn varset(&self) -> &VarSet {
        &self.vars
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    /// Exponent vectors of the row monomials; empty when unlabelled.
    pub fn row_labels(&self) -> &[Vec<u32>] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Vec<u32>] {
        &self.col_labels
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        let pick = |labels: &[Vec<u32>], idx: &[usize]| -> Vec<Vec<u32>> {
            if labels.is_empty() {
                Vec::new()
            } else {
                idx.iter().map(|&i| labels[i].clone()).collect()
            }
        };
        PolyMatrix {
            vars: self.vars.clone(),
            nrows: rows.len(),
            ncols: cols.len(),
            entries,
            row_labels: pick(&self.row_labels, rows),
            col_labels: pick(&self.col_labels, cols),
        }
    }

    /// Specializes every entry at a full assignment of the variables.
    pub fn eval_rational(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j).eval_rational(point)).collect()).collect()
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.nrows != self.ncols {
            return Err(Error::Dimension(format!("{}x{} matrix is not square", self.nrows, self.ncols)));
        }
        let (rows, scale) = self.integral_rows();
        let d = bareiss(rows)?;
        Ok(Polynomial::from_int(&self.vars, d).scale(&scale.recip()))
    }

    /// Rows with denominators cleared, and the product of the row multipliers.
    pub(crate) fn integral_rows(&self) -> (Vec<Vec<IntPoly>>, Rational) {
        let mut scale = Rational::one();
        let rows = (0..self.nrows)
            .map(|i| {
                let row: Vec<&Polynomial> = (0..self.ncols).map(|j| self.get(i, j)).collect();
                let l = row.iter().fold(num_bigint::BigInt::one(), |l, e| num_integer::Integer::lcm(&l, e.denominator()));
                scale *= Rational::from_integer(l.clone());
                row.iter()
                    .map(|e| e.numerator().scale(&crate::polyring::Int::from_big(&l / e.denominator())))
                    .collect()
            })
            .collect();
        (rows, scale)
    }
}

/// Bareiss fraction-free determinant of a square integer-polynomial matrix.
pub fn bareiss(mut m: Vec<Vec<IntPoly>>) -> Result<IntPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| (m[i][k].len(), i)) else {
            return Ok(IntPoly::zero());
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let v = pivot_row[k].mul_sub_mul(&row[j], &row[k], &pivot_row[j])?;
                row[j] = v.div_exact(&prev).ok_or_else(|| Error::Verification("inexact Bareiss division".into()))?;
            }
            row[k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Exact determinant of a rational matrix by Gaussian elimination.
pub fn rational_determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        let inv = pivot.recip();
        let (top, rest) = m.split_at_mut(k + 1);
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] * &inv;
            for j in k + 1..n {
                let t = &f * &top[k][j];
                row[j] -= t;
            }
        }
    }
    det
}

/// Determinant by cofactor expansion over column subsets; suited to small
/// matrices whose entries are large.
pub(crate) fn expansion_det(m: &[Vec<IntPoly>]) -> Result<IntPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(IntPoly::one());
    }
    // minors[mask] = det of the last popcount(mask) rows restricted to columns in mask
    let mut minors: Vec<Option<IntPoly>> = vec![None; 1 << n];
    minors[0] = Some(IntPoly::one());
    let mut masks: Vec<usize> = (1..1usize << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let row = n - mask.count_ones() as usize;
        let mut acc = IntPoly::zero();
        let mut sign_neg = false;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let minor = minors[mask & !(1 << j)].as_ref().expect("smaller minor");
            if !m[row][j].is_zero() && !minor.is_zero() {
                let t = m[row][j].try_mul(minor)?;
                acc = if sign_neg { acc.sub(&t) } else { acc.add(&t) };
            }
            sign_neg = !sign_neg;
        }
        minors[mask] = Some(acc);
    }
    Ok(minors[(1 << n) - 1].take().expect("full minor"))
}
