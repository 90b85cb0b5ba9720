use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quad::QuadExt;
use crate::error::{Error, Result};

/// The scalar interface every model computes over. Both exact scalar
/// types used here (arbitrary-precision rationals and Q(sqrt 2)
/// elements) implement it; all vector/matrix code is written against it.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + From<BigRational>
    + 'static
{
    fn abs(&self) -> Self;
    fn is_negative(&self) -> bool;
}

impl Scalar for BigRational {
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Scalar for QuadExt {
    fn abs(&self) -> Self {
        QuadExt::abs(self)
    }
    fn is_negative(&self) -> bool {
        QuadExt::is_negative(self)
    }
}

/// A column vector with at least one entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S> {
    entries: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        assert!(!entries.is_empty(), "vectors have length >= 1");
        Vector { entries }
    }

    /// The standard basis vector e_i (0-based) in dimension `len`.
    pub fn basis(len: usize, i: usize) -> Self {
        assert!(i < len);
        let mut entries = vec![S::zero(); len];
        entries[i] = S::one();
        Vector { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> &S {
        &self.entries[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn sum(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, x| acc + x.clone())
    }

    /// Sum of absolute values of the entries.
    pub fn l1_norm(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, x| acc + x.abs())
    }

    /// Squared l2 norm, exact. For Q(sqrt 2) amplitudes this is the total
    /// squared magnitude of the state.
    pub fn l2_norm_squared(&self) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Mass on a set of 0-based indices.
    pub fn mass_on(&self, indices: &BTreeSet<usize>) -> S {
        indices
            .iter()
            .fold(S::zero(), |acc, &i| acc + self.entries[i].clone())
    }
}

/// The weighting readout for affine states: each index i is observed with
/// probability |v[i]| / |v|_1. Returns the total probability assigned to
/// `accepting` (0-based indices).
pub fn weighting_distribution<S: Scalar>(
    v: &Vector<S>,
    accepting: &BTreeSet<usize>,
) -> Result<S> {
    let norm = v.l1_norm();
    if norm.is_zero() {
        return Err(Error::DegenerateAffineState);
    }
    let mass = accepting
        .iter()
        .fold(S::zero(), |acc, &i| acc + v.get(i).abs());
    Ok(mass / norm)
}

/// A dense row-major matrix. All transition matrices in this crate are
/// square; rectangular shapes are still permitted for intermediate
/// products.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        assert!(rows > 0 && cols > 0);
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let nrows = rows.len();
        assert!(nrows > 0);
        let ncols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    /// The 0/1 matrix of a state map: column j has a single 1 in row
    /// `f(j)`. Columns of such a matrix are stochastic by construction.
    pub fn column_map(n: usize, f: impl Fn(usize) -> usize) -> Self {
        let mut m = Matrix::from_fn(n, n, |_, _| S::zero());
        for j in 0..n {
            let i = f(j);
            assert!(i < n, "column map target out of range");
            *m.get_mut(i, j) = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut S {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Exact matrix-vector product.
    pub fn apply(&self, v: &Vector<S>) -> Result<Vector<S>> {
        if self.cols != v.len() {
            return Err(Error::DimMismatch {
                rows: self.rows,
                cols: self.cols,
                operand: v.len(),
            });
        }
        let mut out = vec![S::zero(); self.rows];
        // Scatter by columns, skipping zero vector entries: model state
        // vectors are typically supported on a couple of states.
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let m = self.get(r, c);
                if m.is_zero() {
                    continue;
                }
                let cell = &mut out[r];
                *cell = cell.clone() + m.clone() * x.clone();
            }
        }
        Ok(Vector::new(out))
    }

    /// Exact matrix-matrix product.
    pub fn matmul(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != rhs.rows {
            return Err(Error::DimMismatch {
                rows: self.rows,
                cols: self.cols,
                operand: rhs.rows,
            });
        }
        let mut out = Matrix::from_fn(self.rows, rhs.cols, |_, _| S::zero());
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cell = out.get_mut(r, c);
                    *cell = cell.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.get(r, c).is_one()
                    } else {
                        self.get(r, c).is_zero()
                    }
                })
            })
    }

    fn column_sum(&self, c: usize) -> S {
        (0..self.rows).fold(S::zero(), |acc, r| acc + self.get(r, c).clone())
    }
}

/// True iff the matrix is square, every entry is >= 0 and every column
/// sums to exactly 1 (left stochastic).
pub fn validate_stochastic<S: Scalar>(m: &Matrix<S>) -> bool {
    m.is_square()
        && m.data.iter().all(|x| !x.is_negative())
        && (0..m.cols()).all(|c| m.column_sum(c).is_one())
}

/// True iff every column sums to exactly 1; entries may be negative.
pub fn validate_affine<S: Scalar>(m: &Matrix<S>) -> bool {
    m.is_square() && (0..m.cols()).all(|c| m.column_sum(c).is_one())
}

/// True iff transpose(m) * m is the identity, compared exactly.
pub fn validate_orthogonal<S: Scalar>(m: &Matrix<S>) -> bool {
    if !m.is_square() {
        return false;
    }
    m.transpose()
        .matmul(m)
        .map(|p| p.is_identity())
        .unwrap_or(false)
}

/// True iff the matrix is 0/1 with exactly one 1 per column, i.e. the
/// matrix of a total state map.
pub fn validate_deterministic<S: Scalar>(m: &Matrix<S>) -> bool {
    if !m.is_square() {
        return false;
    }
    (0..m.cols()).all(|c| {
        let mut ones = 0usize;
        for r in 0..m.rows() {
            let x = m.get(r, c);
            if x.is_one() {
                ones += 1;
            } else if !x.is_zero() {
                return false;
            }
        }
        ones == 1
    })
}
