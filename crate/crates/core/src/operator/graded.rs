//! Operators and vectors carrying a gauge degree.
//!
//! The circle factor `C(S¹)` is represented by its degree only: an operator
//! `X ⊗ zᵏ` is the block `k ↦ X`. Products add degrees and adjoints negate
//! them.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::sparse::{accumulate, SparseMatrix, SparseVector};
use super::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOperator {
    dim: usize,
    /// Only nonzero blocks are stored.
    blocks: BTreeMap<i64, SparseMatrix>,
}

impl GradedOperator {
    pub fn zero(dim: usize) -> Self {
        GradedOperator {
            dim,
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::homogeneous(0, SparseMatrix::identity(dim))
    }

    /// `m ⊗ z^degree`.
    pub fn homogeneous(degree: i64, m: SparseMatrix) -> Self {
        let dim = m.dim();
        let mut blocks = BTreeMap::new();
        if !m.is_zero() {
            blocks.insert(degree, m);
        }
        GradedOperator { dim, blocks }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn blocks(&self) -> &BTreeMap<i64, SparseMatrix> {
        &self.blocks
    }

    /// The block of the given degree (zero if absent).
    pub fn block(&self, degree: i64) -> SparseMatrix {
        self.blocks
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Some(k)` if the operator is a single nonzero block of degree `k`.
    pub fn degree(&self) -> Option<i64> {
        match self.blocks.len() {
            1 => self.blocks.keys().next().copied(),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn adjoint(&self) -> Self {
        GradedOperator {
            dim: self.dim,
            blocks: self
                .blocks
                .iter()
                .map(|(&d, m)| (-d, m.transpose()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (&d1, a) in &self.blocks {
            for (&d2, b) in &other.blocks {
                out.add_block(d1 + d2, &a.mul(b));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, m) in &other.blocks {
            out.add_block(d, m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-Q::from_integer(1)))
    }

    pub fn scale(&self, c: Q) -> Self {
        let mut out = Self::zero(self.dim);
        for (&d, m) in &self.blocks {
            out.add_block(d, &m.scale(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, x: &GradedVector) -> GradedVector {
        let mut out = GradedVector::default();
        for (&d, m) in &self.blocks {
            for (&deg, v) in &x.parts {
                out.add_part(deg + d, &m.apply(v));
            }
        }
        out
    }

    fn add_block(&mut self, degree: i64, m: &SparseMatrix) {
        let sum = match self.blocks.get(&degree) {
            Some(existing) => existing.add(m),
            None => m.clone(),
        };
        if sum.is_zero() {
            self.blocks.remove(&degree);
        } else {
            self.blocks.insert(degree, sum);
        }
    }
}

/// A vector in `ℓ²(index space) ⊗ span{zᵏ}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedVector {
    parts: BTreeMap<i64, SparseVector>,
}

impl GradedVector {
    /// `e_index ⊗ z^degree`.
    pub fn basis(degree: i64, index: usize) -> Self {
        let mut v = SparseVector::new();
        v.insert(index, Q::from_integer(1));
        GradedVector {
            parts: BTreeMap::from([(degree, v)]),
        }
    }

    pub fn parts(&self) -> &BTreeMap<i64, SparseVector> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, v) in &other.parts {
            out.add_part(d, v);
        }
        out
    }

    pub fn scale(&self, c: Q) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        GradedVector {
            parts: self
                .parts
                .iter()
                .map(|(&d, v)| (d, v.iter().map(|(&i, &x)| (i, x * c)).collect()))
                .collect(),
        }
    }

    /// Nonzero coordinates as `((degree, index), value)`.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, usize), Q)> + '_ {
        self.parts
            .iter()
            .flat_map(|(&d, v)| v.iter().map(move |(&i, &x)| ((d, i), x)))
    }

    fn add_part(&mut self, degree: i64, v: &SparseVector) {
        let part = self.parts.entry(degree).or_default();
        for (&i, &x) in v {
            accumulate(part, i, x);
        }
        if part.is_empty() {
            self.parts.remove(&degree);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(n: usize) -> SparseMatrix {
        SparseMatrix::partial_map(n, |m| (m + 1 < n).then_some(m + 1))
    }

    #[test]
    fn degrees_add_and_negate() {
        let z = GradedOperator::homogeneous(1, shift(5));
        assert_eq!(z.degree(), Some(1));
        assert_eq!(z.adjoint().degree(), Some(-1));
        assert_eq!(z.mul(&z).degree(), Some(2));
        assert_eq!(z.mul(&z.adjoint()).degree(), Some(0));
        assert_eq!(z.adjoint().adjoint(), z);
    }

    #[test]
    fn mixed_sums_keep_both_blocks() {
        let a = GradedOperator::homogeneous(1, shift(3));
        let b = GradedOperator::identity(3);
        let s = a.add(&b);
        assert_eq!(s.degree(), None);
        assert_eq!(s.blocks().len(), 2);
        assert!(s.sub(&a).sub(&b).is_zero());
    }

    #[test]
    fn apply_tracks_degree() {
        let z = GradedOperator::homogeneous(1, shift(3));
        let v = z.apply(&GradedVector::basis(0, 0));
        assert_eq!(v, GradedVector::basis(1, 1));
        assert!(z.apply(&GradedVector::basis(0, 2)).is_zero());
    }
}
