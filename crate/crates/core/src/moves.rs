//! Row additions on `B_E = A_Eᵀ − I`.
//!
//! Adding row `i` to row `j` is allowed when vertex `i` carries a loop and
//! there is a path of positive length from `i` to `j`. Legality is always
//! judged on the graph `A = Bᵀ + I` of the current matrix, since every move
//! changes the graph.
//!
//! Indices are 0-based here; the command-line front end prints them 1-based.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{GraphError, MultiGraph, Multiplicity};
use crate::matrix::IntMatrix;

pub const DEFAULT_MAX_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("cannot add row {0} to row {1}")]
    IllegalMove(usize, usize),
    #[error("vertex `{0}` is a regular source")]
    RegularSource(String),
    #[error("matrix does not come from a graph")]
    NotAGraph,
}

/// `A_Eᵀ − I` for a graph with finite multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BMatrix {
    matrix: IntMatrix,
}

impl BMatrix {
    /// Wraps a matrix, checking that `Bᵀ + I` is a non-negative adjacency
    /// matrix.
    pub fn from_matrix(matrix: IntMatrix) -> Result<Self, MoveError> {
        let b = BMatrix { matrix };
        if !b.matrix.is_square() {
            return Err(MoveError::NotAGraph);
        }
        let n = b.size();
        for i in 0..n {
            for j in 0..n {
                if b.adjacency(j, i) < 0 {
                    return Err(MoveError::NotAGraph);
                }
            }
        }
        Ok(b)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of edges `v -> w` in the graph of this matrix.
    pub fn adjacency(&self, v: usize, w: usize) -> i64 {
        self.matrix[(w, v)] + i64::from(v == w)
    }

    fn has_loop(&self, v: usize) -> bool {
        self.adjacency(v, v) > 0
    }

    fn reachable_from(&self, v: usize) -> Vec<bool> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&w| self.adjacency(v, w) > 0).collect();
        while let Some(u) = stack.pop() {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            stack.extend((0..n).filter(|&w| self.adjacency(u, w) > 0));
        }
        seen
    }

    /// Whether row `i` may be added to row `j` in the current graph.
    pub fn is_legal(&self, i: usize, j: usize) -> Result<bool, MoveError> {
        let n = self.size();
        for k in [i, j] {
            if k >= n {
                return Err(MoveError::IndexOutOfRange(k));
            }
        }
        Ok(i != j && self.has_loop(i) && self.reachable_from(i)[j])
    }

    /// Row `j` becomes row `j` + row `i`.
    pub fn apply_row_add(&self, i: usize, j: usize) -> Result<BMatrix, MoveError> {
        if !self.is_legal(i, j)? {
            return Err(MoveError::IllegalMove(i, j));
        }
        let mut m = self.matrix.clone();
        for k in 0..self.size() {
            m[(j, k)] += self.matrix[(i, k)];
        }
        BMatrix::from_matrix(m)
    }

    /// The graph `Bᵀ + I`, on the given vertex names.
    pub fn to_graph(&self, names: &[String]) -> Result<MultiGraph, MoveError> {
        let mut g = MultiGraph::new(names.iter().cloned())?;
        let n = self.size();
        for v in 0..n {
            for w in 0..n {
                let a = self.adjacency(v, w);
                if a > 0 {
                    g.add_edge_by_index(v, w, Multiplicity::Finite(a as u64))?;
                }
            }
        }
        Ok(g)
    }
}

/// `B_E = A_Eᵀ − I`. Graphs with a regular source are refused.
pub fn b_matrix(g: &MultiGraph) -> Result<BMatrix, MoveError> {
    let a = g.adjacency_matrix()?;
    let n = g.vertex_count();
    for v in 0..n {
        let is_source = (0..n).all(|u| a[(u, v)] == 0);
        if is_source && g.classify_vertex(v).is_regular {
            return Err(MoveError::RegularSource(g.vertices()[v].clone()));
        }
    }
    let b = a
        .transpose()
        .checked_sub(&IntMatrix::identity(n))
        .expect("square matrices of equal size");
    Ok(BMatrix { matrix: b })
}

/// Whether row `i` may be added to row `j` of `B_E`.
pub fn legal_row_add(g: &MultiGraph, i: usize, j: usize) -> Result<bool, MoveError> {
    let n = g.vertex_count();
    for k in [i, j] {
        if k >= n {
            return Err(MoveError::IndexOutOfRange(k));
        }
    }
    Ok(i != j && g.has_loop(i) && g.reachable_from(i)[j])
}

pub fn apply_row_add(b: &BMatrix, i: usize, j: usize) -> Result<BMatrix, MoveError> {
    b.apply_row_add(i, j)
}

/// Replays `moves` on `b`.
pub fn replay(b: &BMatrix, moves: &[(usize, usize)]) -> Result<BMatrix, MoveError> {
    moves
        .iter()
        .try_fold(b.clone(), |acc, &(i, j)| acc.apply_row_add(i, j))
}

/// Shortest sequence (up to `max_depth`) of legal row additions taking
/// `B_from` to `B_to`, found by iterative deepening with moves tried in
/// lexicographic order.
///
/// Rows that are added are non-negative (the diagonal entry of a looped
/// vertex is `≥ 0`), so entries never decrease along a sequence and any
/// state with an entry above the target is abandoned.
pub fn find_move_sequence(
    from: &MultiGraph,
    to: &MultiGraph,
    max_depth: usize,
) -> Result<Option<Vec<(usize, usize)>>, MoveError> {
    let start = b_matrix(from)?;
    let target = b_matrix(to)?;
    if start.size() != target.size() {
        return Ok(None);
    }
    for depth in 0..=max_depth {
        let mut seen = HashMap::new();
        let mut path = Vec::new();
        if search(&start, &target, depth, &mut seen, &mut path) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

fn search(
    state: &BMatrix,
    target: &BMatrix,
    budget: usize,
    seen: &mut HashMap<BMatrix, usize>,
    path: &mut Vec<(usize, usize)>,
) -> bool {
    if state == target {
        return true;
    }
    if budget == 0 || exceeds(state, target) {
        return false;
    }
    match seen.get(state) {
        Some(&b) if b >= budget => return false,
        _ => {
            seen.insert(state.clone(), budget);
        }
    }
    let n = state.size();
    for i in 0..n {
        for j in 0..n {
            if !state.is_legal(i, j).unwrap_or(false) {
                continue;
            }
            let Ok(next) = state.apply_row_add(i, j) else {
                continue;
            };
            path.push((i, j));
            if search(&next, target, budget - 1, seen, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

fn exceeds(state: &BMatrix, target: &BMatrix) -> bool {
    let n = state.size();
    (0..n).any(|i| (0..n).any(|j| state.matrix[(i, j)] > target.matrix[(i, j)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{l24, l24_tilde};
    use crate::graph::DagRelation;

    fn b_l24() -> IntMatrix {
        IntMatrix::from_rows(&[
            [0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 0],
            [1, 1, 0, 0, 0, 0],
            [1, 1, 1, 1, 0, 0],
            [1, 1, 1, 1, 1, 0],
        ])
    }

    fn b_l24_tilde() -> IntMatrix {
        IntMatrix::from_rows(&[
            [0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
        ])
    }

    #[test]
    fn b_matrices_of_named_graphs() {
        assert_eq!(b_matrix(&l24()).unwrap().matrix(), &b_l24());
        assert_eq!(b_matrix(&l24_tilde()).unwrap().matrix(), &b_l24_tilde());
        let point = DagRelation::antichain(1).add_loops();
        assert_eq!(
            b_matrix(&point).unwrap().matrix(),
            &IntMatrix::from_rows(&[[0]])
        );
    }

    #[test]
    fn legality() {
        let g = l24();
        assert!(legal_row_add(&g, 1, 2).unwrap());
        assert!(!legal_row_add(&g, 2, 3).unwrap());
        assert!(!legal_row_add(&g, 3, 3).unwrap());
        assert_eq!(legal_row_add(&g, 0, 6), Err(MoveError::IndexOutOfRange(6)));
        let chain = DagRelation::chain(2).as_graph();
        assert!(!legal_row_add(&chain, 0, 1).unwrap());
    }

    #[test]
    fn published_sequence() {
        let b = b_matrix(&l24_tilde()).unwrap();
        let step = b.apply_row_add(1, 2).unwrap();
        assert_eq!(step.matrix().row(2), &[1, 1, 0, 0, 0, 0]);
        let end = replay(&b, &[(1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        assert_eq!(end.matrix(), &b_l24());
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let b = b_matrix(&l24_tilde()).unwrap();
        assert_eq!(b.apply_row_add(2, 3), Err(MoveError::IllegalMove(2, 3)));
        assert_eq!(b.apply_row_add(5, 0), Err(MoveError::IllegalMove(5, 0)));
    }

    #[test]
    fn search_finds_short_sequences() {
        let seq = find_move_sequence(&l24_tilde(), &l24(), DEFAULT_MAX_DEPTH)
            .unwrap()
            .unwrap();
        assert_eq!(seq.len(), 4);
        let b = b_matrix(&l24_tilde()).unwrap();
        assert_eq!(replay(&b, &seq).unwrap().matrix(), &b_l24());
        assert_eq!(find_move_sequence(&l24(), &l24(), 3).unwrap(), Some(vec![]));
        assert_eq!(find_move_sequence(&l24(), &l24_tilde(), 6).unwrap(), None);
    }

    #[test]
    fn regular_sources_are_refused() {
        let g = DagRelation::chain(2).as_graph();
        assert_eq!(b_matrix(&g), Err(MoveError::RegularSource("1".into())));
    }

    #[test]
    fn graph_round_trip() {
        let g = l24_tilde();
        let b = b_matrix(&g).unwrap();
        assert_eq!(b.to_graph(g.vertices()).unwrap(), g);
    }
}
