//! Column-sparse square matrices over `ℚ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::Q;

/// A square matrix stored as one sparse column per basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<BTreeMap<usize, Q>>,
}

pub type SparseVector = BTreeMap<usize, Q>;

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            cols: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::partial_map(dim, Some)
    }

    /// The 0/1 matrix sending basis vector `j` to `f(j)` (or to 0).
    pub fn partial_map(dim: usize, f: impl Fn(usize) -> Option<usize>) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            if let Some(i) = f(j) {
                assert!(i < dim, "image index out of range");
                m.cols[j].insert(i, Q::one());
            }
        }
        m
    }

    /// The matrix unit `|i⟩⟨j|`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.cols[j].insert(i, Q::one());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j].get(&i).copied().unwrap_or_else(Q::zero)
    }

    pub fn column(&self, j: usize) -> &SparseVector {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Q)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(&i, &v)| (i, j, v)))
    }

    /// Transpose; entries are real, so this is also the adjoint.
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for (i, j, v) in self.entries() {
            t.cols[i].insert(j, v);
        }
        t
    }

    pub fn apply(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (&j, &a) in x {
            for (&i, &b) in &self.cols[j] {
                accumulate(&mut out, i, a * b);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        SparseMatrix {
            dim: self.dim,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, Q::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -Q::one())
    }

    fn combine(&self, other: &Self, sign: Q) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            accumulate(&mut out.cols[j], i, sign * v);
        }
        out
    }

    pub fn scale(&self, c: Q) -> Self {
        if c.is_zero() {
            return Self::zeros(self.dim);
        }
        SparseMatrix {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|(&i, &v)| (i, v * c)).collect())
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim), |acc, _| acc.mul(self))
    }

    /// `P² = P = Pᵀ`.
    pub fn is_projection(&self) -> bool {
        *self == self.transpose() && self.mul(self) == *self
    }
}

/// `out[i] += v`, dropping entries that cancel.
pub fn accumulate(out: &mut SparseVector, i: usize, v: Q) {
    if v.is_zero() {
        return;
    }
    let e = out.entry(i).or_insert_with(Q::zero);
    *e += v;
    if e.is_zero() {
        out.remove(&i);
    }
}
