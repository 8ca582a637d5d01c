//! Finite Weyl groups, parabolic subgroups and the flag-manifold relation.
//!
//! Elements are integer matrices acting on the root lattice: the simple
//! reflection `s_i` sends `α_j ↦ α_j − a_ij α_i`. The group is enumerated by
//! breadth-first search from the identity using left multiplication by the
//! generators, so BFS depth is the Coxeter length and
//! `word(s_i w) = i · word(w)` is a reduced word.
//!
//! Generator indices are 0-based in the API and printed 1-based
//! (`"s1.s3.s2"`); subsets in [`CartanInput`] are 1-based node labels.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{DagRelation, GraphError, MultiGraph};
use crate::matrix::{IntMatrix, MatrixError};

/// Default bound on enumerated group size (the order of `W(A₇)`).
pub const DEFAULT_MAX_SIZE: usize = 40320;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("subset node {0} is outside 1..={1}")]
    SubsetOutOfRange(usize, usize),
    #[error("unsupported Dynkin type {0}{1}")]
    UnsupportedType(String, usize),
    #[error("Cartan matrix is not of finite type")]
    NotFiniteType,
    #[error("group has more than {0} elements")]
    SizeExceeded(usize),
    #[error("coset of {0} has no unique element of minimal length")]
    NonUniqueMinimum(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A Cartan matrix together with the subset `S` of nodes defining `W_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanInput {
    cartan: IntMatrix,
    /// 0-based node indices.
    subset: BTreeSet<usize>,
}

impl CartanInput {
    /// Validates the generalized Cartan matrix axioms; `subset` holds 1-based
    /// node labels.
    pub fn new(cartan: IntMatrix, subset: &[usize]) -> Result<Self, CoxeterError> {
        let r = cartan.rows();
        if !cartan.is_square() {
            return Err(CoxeterError::InvalidCartan("matrix is not square".into()));
        }
        for i in 0..r {
            if cartan[(i, i)] != 2 {
                return Err(CoxeterError::InvalidCartan(format!(
                    "diagonal entry {} is {}",
                    i + 1,
                    cartan[(i, i)]
                )));
            }
            for j in 0..r {
                if i == j {
                    continue;
                }
                if cartan[(i, j)] > 0 {
                    return Err(CoxeterError::InvalidCartan(format!(
                        "entry ({},{}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (cartan[(i, j)] == 0) != (cartan[(j, i)] == 0) {
                    return Err(CoxeterError::InvalidCartan(format!(
                        "entries ({},{}) and ({},{}) are not both zero",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let mut set = BTreeSet::new();
        for &s in subset {
            if s == 0 || s > r {
                return Err(CoxeterError::SubsetOutOfRange(s, r));
            }
            set.insert(s - 1);
        }
        Ok(CartanInput {
            cartan,
            subset: set,
        })
    }

    /// Cartan matrix of Dynkin type `A`, `B`, `C` or `D` and the given rank.
    pub fn dynkin(kind: &str, rank: usize, subset: &[usize]) -> Result<Self, CoxeterError> {
        Self::new(dynkin_cartan(kind, rank)?, subset)
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    /// 0-based indices of the nodes in `S`.
    pub fn subset(&self) -> impl Iterator<Item = usize> + '_ {
        self.subset.iter().copied()
    }

    /// Matrix of `s_i` in the basis of simple roots.
    pub fn generator(&self, i: usize) -> IntMatrix {
        let r = self.rank();
        let mut m = IntMatrix::identity(r);
        for j in 0..r {
            m[(i, j)] -= self.cartan[(i, j)];
        }
        m
    }

    /// Finite type iff the symmetrized matrix is positive definite.
    pub fn is_finite_type(&self) -> bool {
        match self.symmetrizer() {
            Some(d) => {
                let r = self.rank();
                let sym: Vec<Vec<Rational64>> = (0..r)
                    .map(|i| {
                        (0..r)
                            .map(|j| d[i] * Rational64::from_integer(self.cartan[(i, j)]))
                            .collect()
                    })
                    .collect();
                positive_definite(sym)
            }
            None => false,
        }
    }

    /// Positive `d` with `d_i a_ij = d_j a_ji`, if one exists.
    fn symmetrizer(&self) -> Option<Vec<Rational64>> {
        let r = self.rank();
        let mut d: Vec<Option<Rational64>> = vec![None; r];
        for root in 0..r {
            if d[root].is_some() {
                continue;
            }
            d[root] = Some(Rational64::one());
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                let di = d[i].expect("visited vertices carry a value");
                for j in 0..r {
                    if i == j || self.cartan[(i, j)] == 0 {
                        continue;
                    }
                    let dj = di * Rational64::new(self.cartan[(i, j)], self.cartan[(j, i)]);
                    match d[j] {
                        None => {
                            d[j] = Some(dj);
                            queue.push_back(j);
                        }
                        Some(existing) if existing != dj => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        d.into_iter().collect()
    }
}

fn dynkin_cartan(kind: &str, rank: usize) -> Result<IntMatrix, CoxeterError> {
    let unsupported = || CoxeterError::UnsupportedType(kind.to_string(), rank);
    let min_rank = match kind {
        "A" => 1,
        "B" | "C" => 2,
        "D" => 4,
        _ => return Err(unsupported()),
    };
    if rank < min_rank {
        return Err(unsupported());
    }
    let mut m = IntMatrix::identity(rank);
    for i in 0..rank {
        m[(i, i)] = 2;
    }
    let chain_len = if kind == "D" { rank - 1 } else { rank };
    for i in 1..chain_len {
        m[(i - 1, i)] = -1;
        m[(i, i - 1)] = -1;
    }
    match kind {
        "B" => m[(rank - 1, rank - 2)] = -2,
        "C" => m[(rank - 2, rank - 1)] = -2,
        "D" => {
            m[(rank - 3, rank - 1)] = -1;
            m[(rank - 1, rank - 3)] = -1;
        }
        _ => {}
    }
    Ok(m)
}

/// Leading principal minors positive, via pivots of unpivoted elimination.
fn positive_definite(mut m: Vec<Vec<Rational64>>) -> bool {
    let n = m.len();
    for k in 0..n {
        let pivot = m[k][k];
        if pivot <= Rational64::zero() {
            return false;
        }
        for i in k + 1..n {
            let factor = m[i][k] / pivot;
            for j in k..n {
                let delta = factor * m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub matrix: IntMatrix,
    pub length: usize,
    /// 0-based generator indices; the element is their left-to-right product.
    pub word: Vec<usize>,
}

impl WeylElement {
    /// `"1"` for the identity, otherwise e.g. `"s1.s3.s2"`.
    pub fn word_string(&self) -> String {
        word_string(&self.word)
    }
}

pub fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        word.iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// An enumerated Weyl group with a lookup table from matrices to elements.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    generators: Vec<IntMatrix>,
    elements: Vec<WeylElement>,
    lookup: HashMap<IntMatrix, usize>,
}

impl WeylGroup {
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    /// Index of `s_i · w`.
    pub fn left_mul(&self, i: usize, w: usize) -> usize {
        let m = self.generators[i]
            .checked_mul(&self.elements[w].matrix)
            .expect("reflection matrices stay small");
        self.lookup[&m]
    }

    /// Index of `a · b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a]
            .matrix
            .checked_mul(&self.elements[b].matrix)
            .expect("reflection matrices stay small");
        self.lookup[&m]
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements
            .iter()
            .max_by_key(|e| e.length)
            .expect("a group has an identity")
    }
}

/// All elements of the Weyl group, in BFS order (so sorted by length).
pub fn enumerate_group(c: &CartanInput, max_size: usize) -> Result<WeylGroup, CoxeterError> {
    if !c.is_finite_type() {
        return Err(CoxeterError::NotFiniteType);
    }
    let r = c.rank();
    let generators: Vec<IntMatrix> = (0..r).map(|i| c.generator(i)).collect();
    let identity = IntMatrix::identity(r);
    let mut elements = vec![WeylElement {
        matrix: identity.clone(),
        length: 0,
        word: Vec::new(),
    }];
    let mut lookup = HashMap::from([(identity, 0usize)]);
    let mut head = 0;
    while head < elements.len() {
        for (i, g) in generators.iter().enumerate() {
            let m = g.checked_mul(&elements[head].matrix)?;
            if lookup.contains_key(&m) {
                continue;
            }
            if elements.len() == max_size {
                return Err(CoxeterError::SizeExceeded(max_size));
            }
            let mut word = Vec::with_capacity(elements[head].word.len() + 1);
            word.push(i);
            word.extend_from_slice(&elements[head].word);
            lookup.insert(m.clone(), elements.len());
            elements.push(WeylElement {
                matrix: m,
                length: elements[head].length + 1,
                word,
            });
        }
        head += 1;
    }
    Ok(WeylGroup {
        generators,
        elements,
        lookup,
    })
}

/// Indices of the elements of `W_S`, in BFS order.
pub fn parabolic_subgroup(c: &CartanInput, group: &WeylGroup) -> Vec<usize> {
    let mut seen = vec![false; group.len()];
    seen[0] = true;
    let mut out = vec![0];
    let mut head = 0;
    while head < out.len() {
        let w = out[head];
        for i in c.subset() {
            let u = group.left_mul(i, w);
            if !seen[u] {
                seen[u] = true;
                out.push(u);
            }
        }
        head += 1;
    }
    out
}

/// The unique minimal-length element of every left coset `w W_S`, sorted by
/// length and then reduced word.
pub fn min_coset_reps(group: &WeylGroup, subgroup: &[usize]) -> Result<Vec<usize>, CoxeterError> {
    let mut assigned = vec![false; group.len()];
    let mut reps = Vec::new();
    for w in 0..group.len() {
        if assigned[w] {
            continue;
        }
        let coset: Vec<usize> = subgroup.iter().map(|&u| group.mul(w, u)).collect();
        let min_len = coset
            .iter()
            .map(|&x| group.elements[x].length)
            .min()
            .expect("cosets are non-empty");
        let minima: Vec<usize> = coset
            .iter()
            .copied()
            .filter(|&x| group.elements[x].length == min_len)
            .collect();
        if minima.len() != 1 {
            return Err(CoxeterError::NonUniqueMinimum(
                group.elements[w].word_string(),
            ));
        }
        for &x in &coset {
            assigned[x] = true;
        }
        reps.push(minima[0]);
    }
    reps.sort_by(|&a, &b| {
        let (ea, eb) = (&group.elements[a], &group.elements[b]);
        (ea.length, &ea.word).cmp(&(eb.length, &eb.word))
    });
    Ok(reps)
}

/// `W^S` with the relation `(v, w)` iff `w = s_i v` and `ℓ(w) = ℓ(v) + 1`.
#[derive(Debug, Clone)]
pub struct FlagGraph {
    pub reps: Vec<WeylElement>,
    pub relation: DagRelation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepRecord {
    pub vertex: String,
    pub word: String,
    pub length: usize,
    pub matrix: IntMatrix,
}

impl FlagGraph {
    pub fn rep_table(&self) -> Vec<RepRecord> {
        self.reps
            .iter()
            .zip(self.relation.vertices())
            .map(|(e, v)| RepRecord {
                vertex: v.clone(),
                word: e.word_string(),
                length: e.length,
                matrix: e.matrix.clone(),
            })
            .collect()
    }
}

/// The flag relation on the given representatives; vertices are named by
/// their reduced words.
pub fn weak_order_graph(group: &WeylGroup, reps: &[usize]) -> Result<FlagGraph, CoxeterError> {
    let position: HashMap<usize, usize> = reps.iter().enumerate().map(|(k, &w)| (w, k)).collect();
    let mut pairs = Vec::new();
    for (k, &v) in reps.iter().enumerate() {
        for i in 0..group.generators.len() {
            let w = group.left_mul(i, v);
            if group.elements[w].length != group.elements[v].length + 1 {
                continue;
            }
            if let Some(&l) = position.get(&w) {
                pairs.push((k, l));
            }
        }
    }
    let names: Vec<String> = reps
        .iter()
        .map(|&w| group.elements[w].word_string())
        .collect();
    let relation = DagRelation::from_indices(names, pairs)?;
    Ok(FlagGraph {
        reps: reps.iter().map(|&w| group.elements[w].clone()).collect(),
        relation,
    })
}

/// Enumerate, take minimal coset representatives and build the relation.
pub fn flag_graph(c: &CartanInput, max_size: usize) -> Result<FlagGraph, CoxeterError> {
    let group = enumerate_group(c, max_size)?;
    let sub = parabolic_subgroup(c, &group);
    let reps = min_coset_reps(&group, &sub)?;
    weak_order_graph(&group, &reps)
}

/// `F_R` for the flag relation `R`.
pub fn flag_amplified(c: &CartanInput, max_size: usize) -> Result<MultiGraph, CoxeterError> {
    Ok(flag_graph(c, max_size)?.relation.amplify())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(rank: usize, subset: &[usize]) -> CartanInput {
        CartanInput::dynkin("A", rank, subset).unwrap()
    }

    fn product(c: &CartanInput, word: &[usize]) -> IntMatrix {
        word.iter().fold(IntMatrix::identity(c.rank()), |acc, &i| {
            acc.checked_mul(&c.generator(i)).unwrap()
        })
    }

    #[test]
    fn group_orders() {
        assert_eq!(
            enumerate_group(&a(1, &[]), DEFAULT_MAX_SIZE).unwrap().len(),
            2
        );
        for (n, order) in [(2, 6), (3, 24), (4, 120)] {
            assert_eq!(
                enumerate_group(&a(n, &[]), DEFAULT_MAX_SIZE).unwrap().len(),
                order
            );
        }
        let b3 = CartanInput::dynkin("B", 3, &[]).unwrap();
        assert_eq!(enumerate_group(&b3, DEFAULT_MAX_SIZE).unwrap().len(), 48);
        let c3 = CartanInput::dynkin("C", 3, &[]).unwrap();
        assert_eq!(enumerate_group(&c3, DEFAULT_MAX_SIZE).unwrap().len(), 48);
        let d4 = CartanInput::dynkin("D", 4, &[]).unwrap();
        assert_eq!(enumerate_group(&d4, DEFAULT_MAX_SIZE).unwrap().len(), 192);
        let g2 = CartanInput::new(IntMatrix::from_rows(&[[2, -1], [-3, 2]]), &[]).unwrap();
        assert_eq!(enumerate_group(&g2, DEFAULT_MAX_SIZE).unwrap().len(), 12);
    }

    #[test]
    fn words_multiply_to_matrices() {
        let c = a(3, &[]);
        let g = enumerate_group(&c, DEFAULT_MAX_SIZE).unwrap();
        for e in g.elements() {
            assert_eq!(e.word.len(), e.length);
            assert_eq!(product(&c, &e.word), e.matrix);
        }
        let longest = g.longest();
        assert_eq!(longest.length, 6);
        assert_eq!(longest.matrix, product(&c, &[0, 1, 2, 0, 1, 0]));
    }

    #[test]
    fn generators_are_involutions() {
        for (kind, rank) in [("A", 3), ("B", 3), ("C", 4), ("D", 4)] {
            let c = CartanInput::dynkin(kind, rank, &[]).unwrap();
            for i in 0..rank {
                let s = c.generator(i);
                assert_eq!(s.checked_mul(&s).unwrap(), IntMatrix::identity(rank));
            }
        }
    }

    #[test]
    fn parity_of_lengths() {
        let c = CartanInput::dynkin("B", 3, &[]).unwrap();
        let g = enumerate_group(&c, DEFAULT_MAX_SIZE).unwrap();
        for w in 0..g.len() {
            for i in 0..3 {
                let l = g.elements()[g.left_mul(i, w)].length;
                let lw = g.elements()[w].length;
                assert!(l + 1 == lw || l == lw + 1);
            }
        }
    }

    #[test]
    fn rejects_infinite_and_malformed() {
        let affine = IntMatrix::from_rows(&[[2, -2], [-2, 2]]);
        let c = CartanInput::new(affine, &[]).unwrap();
        assert_eq!(
            enumerate_group(&c, 100).unwrap_err(),
            CoxeterError::NotFiniteType
        );
        assert!(matches!(
            CartanInput::new(IntMatrix::from_rows(&[[2, -1], [0, 2]]), &[]),
            Err(CoxeterError::InvalidCartan(_))
        ));
        assert_eq!(
            CartanInput::dynkin("A", 2, &[3]).unwrap_err(),
            CoxeterError::SubsetOutOfRange(3, 2)
        );
        assert_eq!(
            enumerate_group(&a(4, &[]), 100).unwrap_err(),
            CoxeterError::SizeExceeded(100)
        );
    }

    #[test]
    fn grassmannian_reps() {
        let c = a(3, &[1, 3]);
        let g = enumerate_group(&c, DEFAULT_MAX_SIZE).unwrap();
        let sub = parabolic_subgroup(&c, &g);
        let sub_words: std::collections::HashSet<Vec<usize>> =
            sub.iter().map(|&u| g.elements()[u].word.clone()).collect();
        assert_eq!(sub.len(), 4);
        assert!(sub_words.contains(&vec![]));
        let reps = min_coset_reps(&g, &sub).unwrap();
        let got: std::collections::HashSet<IntMatrix> = reps
            .iter()
            .map(|&w| g.elements()[w].matrix.clone())
            .collect();
        let expected: std::collections::HashSet<IntMatrix> = [
            vec![],
            vec![1],
            vec![0, 1],
            vec![2, 1],
            vec![0, 2, 1],
            vec![1, 2, 0, 1],
        ]
        .iter()
        .map(|w| product(&c, w))
        .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn extreme_subsets() {
        let c = a(3, &[1, 2, 3]);
        let fg = flag_graph(&c, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(fg.reps.len(), 1);
        assert!(fg.relation.is_empty());
        assert_eq!(
            flag_amplified(&c, DEFAULT_MAX_SIZE).unwrap().edge_count(),
            0
        );

        let c = a(3, &[]);
        let g = enumerate_group(&c, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(parabolic_subgroup(&c, &g), vec![0]);
        assert_eq!(min_coset_reps(&g, &[0]).unwrap().len(), 24);
    }

    #[test]
    fn projective_plane_is_a_chain() {
        let fg = flag_graph(&a(2, &[2]), DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(fg.relation.vertex_count(), 3);
        assert_eq!(fg.relation.len(), 2);
        assert_eq!(fg.relation.transitive_closure().len(), 3);
    }
}
