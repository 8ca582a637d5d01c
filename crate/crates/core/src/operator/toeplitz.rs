//! Tensor powers of the truncated unilateral shift.
//!
//! On `span{|0⟩,…,|N−1⟩}` the shift is `T|m⟩ = |m+1⟩` with `T|N−1⟩ = 0`.
//! Then `Q = 1 − TT* = |0⟩⟨0|` and `Q^⊥ = TT*` hold exactly, while
//! `T*T = 1` fails only at `|N−1⟩`.

use super::graded::GradedOperator;
use super::rep::Representation;
use super::space::IndexSpace;
use super::sparse::SparseMatrix;

/// `k` tensor factors, each truncated to `{0,…,N−1}`; factors are numbered
/// from 1 as in the leg notation `T_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ToeplitzFactors {
    k: usize,
    n: usize,
}

impl ToeplitzFactors {
    pub fn new(k: usize, n: usize) -> Self {
        assert!(k >= 1 && n >= 1, "need at least one factor and one level");
        ToeplitzFactors { k, n }
    }

    pub fn factors(&self) -> usize {
        self.k
    }

    pub fn cutoff(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.k as u32)
    }

    /// Index of `|m₁,…,m_k⟩`.
    pub fn encode(&self, m: &[usize]) -> usize {
        assert_eq!(m.len(), self.k);
        m.iter().fold(0, |acc, &x| {
            assert!(x < self.n, "level out of range");
            acc * self.n + x
        })
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut m = vec![0; self.k];
        for slot in m.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        m
    }

    pub fn space(&self) -> IndexSpace {
        let upper = (0..self.dim())
            .map(|i| {
                self.decode(i)
                    .iter()
                    .map(|&m| self.n - 1 - m)
                    .min()
                    .unwrap_or(usize::MAX)
            })
            .collect();
        IndexSpace::new(vec![usize::MAX; self.dim()], upper)
    }

    fn per_factor(&self, i: usize, f: impl Fn(usize) -> Option<usize>) -> SparseMatrix {
        assert!((1..=self.k).contains(&i), "factor index out of range");
        SparseMatrix::partial_map(self.dim(), |idx| {
            let mut m = self.decode(idx);
            m[i - 1] = f(m[i - 1])?;
            Some(self.encode(&m))
        })
    }

    /// `T_i`.
    pub fn t(&self, i: usize) -> SparseMatrix {
        let n = self.n;
        self.per_factor(i, |m| (m + 1 < n).then_some(m + 1))
    }

    /// `Q_i`, the projection onto `|0⟩` in factor `i`.
    pub fn q(&self, i: usize) -> SparseMatrix {
        self.per_factor(i, |m| (m == 0).then_some(0))
    }

    /// `Q_i^⊥ = 1 − Q_i`.
    pub fn q_perp(&self, i: usize) -> SparseMatrix {
        self.per_factor(i, |m| (m > 0).then_some(m))
    }

    pub fn identity(&self) -> SparseMatrix {
        SparseMatrix::identity(self.dim())
    }

    /// `|m⟩⟨m'|`.
    pub fn matrix_unit(&self, m: &[usize], m_prime: &[usize]) -> SparseMatrix {
        SparseMatrix::unit(self.dim(), self.encode(m), self.encode(m_prime))
    }

    /// A representation binding `T{i}`, `Q{i}` and `Qperp{i}` in degree 0.
    pub fn representation(&self) -> Representation {
        let mut rep = Representation::new(self.space());
        for i in 1..=self.k {
            rep.insert(format!("T{i}"), GradedOperator::homogeneous(0, self.t(i)));
            rep.insert(format!("Q{i}"), GradedOperator::homogeneous(0, self.q(i)));
            rep.insert(
                format!("Qperp{i}"),
                GradedOperator::homogeneous(0, self.q_perp(i)),
            );
        }
        rep
    }
}

/// Left-to-right product of the given matrices.
pub fn product(dim: usize, factors: &[SparseMatrix]) -> SparseMatrix {
    factors
        .iter()
        .fold(SparseMatrix::identity(dim), |acc, m| acc.mul(m))
}
