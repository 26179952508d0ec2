//! Dense row-major matrices over `i64` (exact) and `f64`.

use std::fmt;
use std::ops::{Index, IndexMut, Range};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_iter()).finish()
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntegerMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::SizeMismatch { expected: cols, found: bad.len() });
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[i64]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.row_iter().map(<[i64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise absolute value.
    pub fn abs(&self) -> Self {
        IntegerMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.abs()).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> u64 {
        self.data.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn sum(&self) -> i64 {
        self.data.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.row_iter().map(|r| r.iter().sum()).collect()
    }

    /// Exact product. Fails with [`Error::Overflow`] if an entry leaves `i64`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch { expected: self.cols, found: other.rows });
        }
        let bound = self.max_abs() as u128 * other.max_abs() as u128 * self.cols as u128;
        if bound <= i64::MAX as u128 {
            let mut data = vec![0i64; self.rows * other.cols];
            for i in 0..self.rows {
                let out = &mut data[i * other.cols..(i + 1) * other.cols];
                for (k, &a) in self.row(i).iter().enumerate() {
                    if a != 0 {
                        for (o, &b) in out.iter_mut().zip(other.row(k)) {
                            *o += a * b;
                        }
                    }
                }
            }
            return Ok(IntegerMatrix { rows: self.rows, cols: other.cols, data });
        }
        let mut acc = vec![0i128; self.rows * other.cols];
        for i in 0..self.rows {
            let out = &mut acc[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (o, &b) in out.iter_mut().zip(other.row(k)) {
                    *o += a as i128 * b as i128;
                }
            }
        }
        let data = acc.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::Overflow)).collect::<Result<_>>()?;
        Ok(IntegerMatrix { rows: self.rows, cols: other.cols, data })
    }

    /// Product that panics on overflow; for operators whose entries are
    /// known to be small.
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("integer matrix product overflowed i64")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Submatrix on the given row and column index ranges.
    pub fn slice(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows.start + i, cols.start + j)])
    }

    /// Principal submatrix on the listed indices, in the given order.
    pub fn principal(&self, keep: &[usize]) -> Self {
        Self::from_fn(keep.len(), keep.len(), |i, j| self[(keep[i], keep[j])])
    }

    /// Principal submatrix with the given positions removed.
    pub fn delete(&self, positions: &[usize]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::SizeMismatch { expected: self.rows, found: self.cols });
        }
        if let Some(&bad) = positions.iter().find(|&&p| p >= self.rows) {
            return Err(Error::InvalidInput(format!("index {bad} out of range for order {}", self.rows)));
        }
        let keep: Vec<usize> = (0..self.rows).filter(|i| !positions.contains(i)).collect();
        Ok(self.principal(&keep))
    }

    pub fn to_real(&self) -> RealMatrix {
        RealMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] as f64)
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RealMatrix { rows, cols, data }
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: f64) -> Self {
        RealMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(src) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_overflow() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(a.mul(&IntegerMatrix::identity(2)), a);
        assert_eq!(a.mul(&a).to_rows(), vec![vec![7, 10], vec![15, 22]]);
        let big = IntegerMatrix::from_rows(&[vec![i64::MAX / 2, i64::MAX / 2]]).unwrap();
        assert!(matches!(big.checked_mul(&big.transpose()), Err(Error::Overflow)));
    }

    #[test]
    fn delete_positions() {
        let a = IntegerMatrix::from_fn(3, 3, |i, j| (3 * i + j) as i64);
        assert_eq!(a.delete(&[1]).unwrap().to_rows(), vec![vec![0, 2], vec![6, 8]]);
        assert_eq!(a.delete(&[]).unwrap(), a);
        assert!(a.delete(&[3]).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(IntegerMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }
}
