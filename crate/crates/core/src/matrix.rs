//! Small dense integer matrices with overflow-checked arithmetic.
//!
//! Everything in this crate that touches adjacency data (walk counts,
//! inverses of unipotent matrices, `B`-matrices) stays in exact integers, so
//! overflow is reported instead of wrapping.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
}

/// Row-major dense `i64` matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
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

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(*b).ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(*b).ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    pub fn checked_neg(&self) -> Result<Self, MatrixError> {
        let data = self
            .data
            .iter()
            .map(|a| a.checked_neg().ok_or(MatrixError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b == 0 {
                        continue;
                    }
                    let prod = a.checked_mul(b).ok_or(MatrixError::Overflow)?;
                    let cell = &mut out[(i, j)];
                    *cell = cell.checked_add(prod).ok_or(MatrixError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// `self^k` by repeated squaring; `k = 0` gives the identity.
    pub fn checked_pow(&self, mut k: u32) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, self.rows, self.cols,
            ));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl From<Vec<Vec<i64>>> for IntMatrix {
    fn from(rows: Vec<Vec<i64>>) -> Self {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .data
            .iter()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_matches_repeated_mul() {
        let m = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        let mut acc = IntMatrix::identity(2);
        for k in 0..6 {
            assert_eq!(m.checked_pow(k).unwrap(), acc);
            acc = acc.checked_mul(&m).unwrap();
        }
        assert_eq!(
            m.checked_pow(5).unwrap(),
            IntMatrix::from_rows(&[[1, 5], [0, 1]])
        );
    }

    #[test]
    fn overflow_is_reported() {
        let m = IntMatrix::from_rows(&[[i64::MAX, 1], [1, 1]]);
        assert_eq!(m.checked_mul(&m), Err(MatrixError::Overflow));
    }

    #[test]
    fn shape_mismatch() {
        let a = IntMatrix::zeros(2, 3);
        assert!(matches!(
            a.checked_mul(&a),
            Err(MatrixError::DimensionMismatch(2, 3, 2, 3))
        ));
    }
}
