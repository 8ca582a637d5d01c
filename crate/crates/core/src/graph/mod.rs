//! Finite directed multigraphs and the acyclic relations they are built from.
//!
//! A [`MultiGraph`] stores at most one record per ordered vertex pair and
//! aggregates parallel edges into a [`Multiplicity`]; amplified graphs only
//! need the finite/infinite distinction, so `∞` is a distinguished token
//! rather than an actual edge set.
//!
//! Vertices are opaque strings. The declared order fixes the row and column
//! indexing of every matrix derived from a graph.

mod json;
pub mod named;
mod relation;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

pub use json::{EdgeRecord, GraphJson, RelationEdge, RelationJson};
pub use relation::DagRelation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("edge multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("relation contains a directed cycle through `{0}`")]
    CyclicInput(String),
    #[error("edge {0} -> {1} has infinite multiplicity")]
    InfiniteMultiplicity(String, String),
    #[error("vertex set is not hereditary: edge {0} -> {1} leaves it")]
    NotHereditary(String, String),
    #[error("vertex set is not saturated: regular vertex `{0}` only emits into it")]
    NotSaturated(String),
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Number of parallel edges between two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub const ONE: Multiplicity = Multiplicity::Finite(1);

    pub fn is_infinite(self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }

    /// Multiplicity after merging a parallel record. `∞` absorbs.
    pub fn merge(self, other: Multiplicity) -> Multiplicity {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => a
                .checked_add(b)
                .map_or(Multiplicity::Infinite, Multiplicity::Finite),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

/// An edge record, by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub mult: Multiplicity,
}

/// Sink / infinite-emitter / regular flags of one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    pub is_sink: bool,
    pub is_infinite_emitter: bool,
    pub is_regular: bool,
}

/// Result of [`MultiGraph::subset_flags`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubsetFlags {
    pub hereditary: bool,
    pub saturated: bool,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct MultiGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), Multiplicity>,
}

impl MultiGraph {
    /// A graph on the given vertices with no edges.
    pub fn new<I, S>(vertices: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let index = index_vertices(&vertices)?;
        Ok(MultiGraph {
            vertices,
            index,
            edges: BTreeMap::new(),
        })
    }

    /// Adds `mult` parallel edges `src -> dst`, merging with any existing record.
    pub fn add_edge(&mut self, src: &str, dst: &str, mult: Multiplicity) -> Result<(), GraphError> {
        let s = self.require(src)?;
        let t = self.require(dst)?;
        self.add_edge_by_index(s, t, mult)
    }

    pub fn add_edge_by_index(
        &mut self,
        src: usize,
        dst: usize,
        mult: Multiplicity,
    ) -> Result<(), GraphError> {
        let n = self.vertices.len();
        if src >= n {
            return Err(GraphError::IndexOutOfRange(src));
        }
        if dst >= n {
            return Err(GraphError::IndexOutOfRange(dst));
        }
        if mult == Multiplicity::Finite(0) {
            return Err(GraphError::ZeroMultiplicity);
        }
        self.edges
            .entry((src, dst))
            .and_modify(|m| *m = m.merge(mult))
            .or_insert(mult);
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub(crate) fn require(&self, v: &str) -> Result<usize, GraphError> {
        self.index_of(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))
    }

    /// Edge records in `(src, dst)` index order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(|(&(src, dst), &mult)| Edge { src, dst, mult })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicity(&self, src: usize, dst: usize) -> Option<Multiplicity> {
        self.edges.get(&(src, dst)).copied()
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .range((v, 0)..(v + 1, 0))
            .map(|(&(src, dst), &mult)| Edge { src, dst, mult })
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.edges.contains_key(&(v, v))
    }

    /// True iff the underlying simple digraph has no directed cycle.
    /// Loops count as cycles; multiplicities are ignored.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; `None` if there is a cycle.
    pub(crate) fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for &(_, t) in self.edges.keys() {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for e in self.out_edges(v) {
                indeg[e.dst] -= 1;
                if indeg[e.dst] == 0 {
                    queue.push_back(e.dst);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Entry `(v, w)` is the number of edges `v -> w`.
    pub fn adjacency_matrix(&self) -> Result<IntMatrix, GraphError> {
        let n = self.vertices.len();
        let mut a = IntMatrix::zeros(n, n);
        for e in self.edges() {
            let m = e.mult.finite().ok_or_else(|| {
                GraphError::InfiniteMultiplicity(
                    self.vertices[e.src].clone(),
                    self.vertices[e.dst].clone(),
                )
            })?;
            a[(e.src, e.dst)] = i64::try_from(m).map_err(|_| GraphError::ZeroMultiplicity)?;
        }
        Ok(a)
    }

    pub fn classify_vertex(&self, v: usize) -> VertexClass {
        let mut any = false;
        let mut infinite = false;
        for e in self.out_edges(v) {
            any = true;
            infinite |= e.mult.is_infinite();
        }
        VertexClass {
            is_sink: !any,
            is_infinite_emitter: infinite,
            is_regular: any && !infinite,
        }
    }

    pub fn classify_vertices(&self) -> Vec<VertexClass> {
        (0..self.vertices.len())
            .map(|v| self.classify_vertex(v))
            .collect()
    }

    /// Hereditary: edges leaving `h` stay in `h`. Saturated: every regular
    /// vertex whose edges all land in `h` is itself in `h`.
    pub fn subset_flags<S: AsRef<str>>(&self, h: &[S]) -> Result<SubsetFlags, GraphError> {
        let mask = self.mask(h)?;
        Ok(SubsetFlags {
            hereditary: self.hereditary_violation(&mask).is_none(),
            saturated: self.saturation_violation(&mask).is_none(),
        })
    }

    /// The graph `E \ H`: vertices outside `h`, and the edges between them.
    ///
    /// Requires `h` hereditary and saturated. Infinite multiplicities are
    /// accepted; for graphs without regular vertices this is still the
    /// quotient by the gauge-invariant ideal of `h`.
    pub fn quotient_graph<S: AsRef<str>>(&self, h: &[S]) -> Result<MultiGraph, GraphError> {
        let mask = self.mask(h)?;
        if let Some((s, t)) = self.hereditary_violation(&mask) {
            return Err(GraphError::NotHereditary(
                self.vertices[s].clone(),
                self.vertices[t].clone(),
            ));
        }
        if let Some(v) = self.saturation_violation(&mask) {
            return Err(GraphError::NotSaturated(self.vertices[v].clone()));
        }
        let keep: Vec<usize> = (0..self.vertices.len()).filter(|&v| !mask[v]).collect();
        let mut g = MultiGraph::new(keep.iter().map(|&v| self.vertices[v].clone()))?;
        for e in self.edges() {
            if !mask[e.src] && !mask[e.dst] {
                g.add_edge(&self.vertices[e.src], &self.vertices[e.dst], e.mult)?;
            }
        }
        Ok(g)
    }

    /// Vertices reachable from `v` by a walk of positive length.
    pub fn reachable_from(&self, v: usize) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        let mut stack: Vec<usize> = self.out_edges(v).map(|e| e.dst).collect();
        while let Some(u) = stack.pop() {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            stack.extend(self.out_edges(u).map(|e| e.dst));
        }
        seen
    }

    fn mask<S: AsRef<str>>(&self, h: &[S]) -> Result<Vec<bool>, GraphError> {
        let mut mask = vec![false; self.vertices.len()];
        for v in h {
            mask[self.require(v.as_ref())?] = true;
        }
        Ok(mask)
    }

    fn hereditary_violation(&self, mask: &[bool]) -> Option<(usize, usize)> {
        self.edges()
            .find(|e| mask[e.src] && !mask[e.dst])
            .map(|e| (e.src, e.dst))
    }

    fn saturation_violation(&self, mask: &[bool]) -> Option<usize> {
        (0..self.vertices.len()).find(|&v| {
            !mask[v] && self.classify_vertex(v).is_regular && self.out_edges(v).all(|e| mask[e.dst])
        })
    }
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for MultiGraph {}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|e| {
                format!(
                    "{}->{}({})",
                    self.vertices[e.src], self.vertices[e.dst], e.mult
                )
            })
            .collect();
        f.debug_struct("MultiGraph")
            .field("vertices", &self.vertices)
            .field("edges", &edges)
            .finish()
    }
}

pub(crate) fn index_vertices(vertices: &[String]) -> Result<HashMap<String, usize>, GraphError> {
    let mut index = HashMap::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            return Err(GraphError::DuplicateVertex(v.clone()));
        }
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_er() -> MultiGraph {
        DagRelation::chain(3).add_loops()
    }

    #[test]
    fn parallel_edges_aggregate() {
        let mut g = MultiGraph::new(["a", "b"]).unwrap();
        g.add_edge("a", "b", Multiplicity::ONE).unwrap();
        g.add_edge("a", "b", Multiplicity::Finite(2)).unwrap();
        assert_eq!(g.multiplicity(0, 1), Some(Multiplicity::Finite(3)));
        g.add_edge("a", "b", Multiplicity::Infinite).unwrap();
        assert_eq!(g.multiplicity(0, 1), Some(Multiplicity::Infinite));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            MultiGraph::new(["a", "a"]).unwrap_err(),
            GraphError::DuplicateVertex("a".into())
        );
        let mut g = MultiGraph::new(["a"]).unwrap();
        assert_eq!(
            g.add_edge("a", "z", Multiplicity::ONE),
            Err(GraphError::UnknownVertex("z".into()))
        );
        assert_eq!(
            g.add_edge("a", "a", Multiplicity::Finite(0)),
            Err(GraphError::ZeroMultiplicity)
        );
    }

    #[test]
    fn acyclicity_examples() {
        let r = DagRelation::new(["1", "2", "3"], [("1", "2"), ("1", "3"), ("2", "3")]).unwrap();
        assert!(r.as_graph().is_acyclic());

        let mut g = MultiGraph::new(["1", "2", "3"]).unwrap();
        for (s, t) in [("1", "2"), ("2", "3"), ("3", "1")] {
            g.add_edge(s, t, Multiplicity::ONE).unwrap();
        }
        assert!(!g.is_acyclic());

        assert!(MultiGraph::new(["1"]).unwrap().is_acyclic());
        assert!(!chain_er().is_acyclic(), "loops are cycles");
    }

    #[test]
    fn adjacency_examples() {
        let g = DagRelation::chain(2).add_loops();
        assert_eq!(
            g.adjacency_matrix().unwrap(),
            IntMatrix::from_rows(&[[1, 1], [0, 1]])
        );
        let mut single = MultiGraph::new(["v"]).unwrap();
        single.add_edge("v", "v", Multiplicity::ONE).unwrap();
        assert_eq!(single.adjacency_matrix().unwrap(), IntMatrix::identity(1));

        let f = DagRelation::chain(2).amplify();
        assert!(matches!(
            f.adjacency_matrix(),
            Err(GraphError::InfiniteMultiplicity(_, _))
        ));
    }

    #[test]
    fn classification() {
        let teardrop = DagRelation::teardrop(3).amplify();
        let classes = teardrop.classify_vertices();
        assert!(classes[0].is_infinite_emitter && !classes[0].is_regular);
        for c in &classes[1..] {
            assert!(c.is_sink && !c.is_regular);
        }
        assert!(chain_er().classify_vertices().iter().all(|c| c.is_regular));
        let isolated = MultiGraph::new(["x"]).unwrap();
        assert!(isolated.classify_vertex(0).is_sink);
    }

    #[test]
    fn subset_flag_examples() {
        let g = chain_er();
        assert_eq!(
            g.subset_flags(&["3"]).unwrap(),
            SubsetFlags {
                hereditary: true,
                saturated: true
            }
        );
        assert!(!g.subset_flags(&["1"]).unwrap().hereditary);
        // {2,3} is hereditary; 1 still emits its loop outside, so saturated too.
        assert!(g.subset_flags(&["2", "3"]).unwrap().saturated);
        assert_eq!(
            g.subset_flags(&["nope"]),
            Err(GraphError::UnknownVertex("nope".into()))
        );
    }

    #[test]
    fn saturation_without_loops() {
        // Finite graph 1 -> 2: {2} is hereditary but not saturated.
        let g = DagRelation::chain(2).as_graph();
        let flags = g.subset_flags(&["2"]).unwrap();
        assert!(flags.hereditary && !flags.saturated);
        assert_eq!(
            g.quotient_graph(&["2"]),
            Err(GraphError::NotSaturated("1".into()))
        );
    }

    #[test]
    fn quotient_examples() {
        let l5 = DagRelation::total_order(3).add_loops();
        let q = l5.quotient_graph(&["3"]).unwrap();
        assert_eq!(q, DagRelation::total_order(2).add_loops());
        let empty: [&str; 0] = [];
        assert_eq!(l5.quotient_graph(&empty).unwrap(), l5);
        assert_eq!(
            l5.quotient_graph(&["1"]),
            Err(GraphError::NotHereditary("1".into(), "2".into()))
        );
    }
}
