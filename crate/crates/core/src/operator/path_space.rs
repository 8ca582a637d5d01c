//! The finite path representation of a graph.
//!
//! The basis is every walk of length `≤ N` (including one empty walk per
//! vertex). Edges act by prepending: `S_e|α⟩ = |eα⟩` when `t(e) = s(α)` and
//! `|eα| ≤ N`, so `S_e* S_e = P_{t(e)}` holds on walks of length `< N`,
//! and `P_v = Σ_{s(e)=v} S_e S_e*` holds on non-empty walks.

use std::collections::BTreeMap;

use super::check::CkFamily;
use super::graded::GradedOperator;
use super::rep::Representation;
use super::space::IndexSpace;
use super::sparse::SparseMatrix;
use super::OpError;
use crate::graph::{GraphError, MultiGraph};

/// One parallel copy of an edge of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeInstance {
    pub src: usize,
    pub dst: usize,
    /// 0-based copy number among the parallel edges `src -> dst`.
    pub copy: usize,
    pub name: String,
}

#[derive(Debug, Clone)]
pub struct PathSpace {
    graph: MultiGraph,
    max_len: usize,
    edges: Vec<EdgeInstance>,
    /// `(start vertex, edge ids)` per basis vector.
    walks: Vec<(usize, Vec<usize>)>,
    /// `prepend[e][α] = eα`.
    prepend: Vec<BTreeMap<usize, usize>>,
}

impl PathSpace {
    /// Edge copies are named `"{s}->{t}"`, or `"{s}->{t}#{k}"` when there
    /// are parallel copies.
    pub fn new(graph: &MultiGraph, max_len: usize) -> Result<Self, OpError> {
        let names = graph.vertices();
        Self::with_names(graph, max_len, |s, t, k, mult| {
            if mult == 1 {
                format!("{}->{}", names[s], names[t])
            } else {
                format!("{}->{}#{}", names[s], names[t], k)
            }
        })
    }

    /// Like [`PathSpace::new`] with a custom `(src, dst, copy, mult)` namer.
    pub fn with_names(
        graph: &MultiGraph,
        max_len: usize,
        name: impl Fn(usize, usize, usize, usize) -> String,
    ) -> Result<Self, OpError> {
        let mut edges = Vec::new();
        for e in graph.edges() {
            let m = e.mult.finite().ok_or_else(|| {
                GraphError::InfiniteMultiplicity(
                    graph.vertices()[e.src].clone(),
                    graph.vertices()[e.dst].clone(),
                )
            })? as usize;
            for copy in 0..m {
                edges.push(EdgeInstance {
                    src: e.src,
                    dst: e.dst,
                    copy,
                    name: name(e.src, e.dst, copy, m),
                });
            }
        }

        let mut walks: Vec<(usize, Vec<usize>)> =
            (0..graph.vertex_count()).map(|v| (v, Vec::new())).collect();
        let mut prepend = vec![BTreeMap::new(); edges.len()];
        let mut level_start = 0;
        for _ in 0..max_len {
            let level_end = walks.len();
            for a in level_start..level_end {
                let start = walks[a].0;
                for (id, e) in edges.iter().enumerate() {
                    if e.dst != start {
                        continue;
                    }
                    let mut w = Vec::with_capacity(walks[a].1.len() + 1);
                    w.push(id);
                    w.extend_from_slice(&walks[a].1);
                    prepend[id].insert(a, walks.len());
                    walks.push((e.src, w));
                }
            }
            level_start = level_end;
        }

        Ok(PathSpace {
            graph: graph.clone(),
            max_len,
            edges,
            walks,
            prepend,
        })
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn dim(&self) -> usize {
        self.walks.len()
    }

    pub fn edges(&self) -> &[EdgeInstance] {
        &self.edges
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Length of the `i`-th basis walk.
    pub fn walk_len(&self, i: usize) -> usize {
        self.walks[i].1.len()
    }

    pub fn space(&self) -> IndexSpace {
        let lower = (0..self.dim()).map(|i| self.walk_len(i)).collect();
        let upper = (0..self.dim())
            .map(|i| self.max_len - self.walk_len(i))
            .collect();
        IndexSpace::new(lower, upper)
    }

    pub fn vertex_projection(&self, v: usize) -> SparseMatrix {
        SparseMatrix::partial_map(self.dim(), |i| (self.walks[i].0 == v).then_some(i))
    }

    pub fn edge_operator(&self, e: usize) -> SparseMatrix {
        SparseMatrix::partial_map(self.dim(), |i| self.prepend[e].get(&i).copied())
    }

    /// The canonical family: `P{v}` in degree 0 and `S{edge name}` in
    /// degree 1.
    pub fn representation(&self) -> Representation {
        let mut rep = Representation::new(self.space());
        for (v, name) in self.graph.vertices().iter().enumerate() {
            rep.insert(
                format!("P{name}"),
                GradedOperator::homogeneous(0, self.vertex_projection(v)),
            );
        }
        for (id, e) in self.edges.iter().enumerate() {
            rep.insert(
                format!("S{}", e.name),
                GradedOperator::homogeneous(1, self.edge_operator(id)),
            );
        }
        rep
    }

    /// The canonical family as a Cuntz–Krieger family of its own graph.
    pub fn ck_family(&self) -> CkFamily {
        let vertices = self
            .graph
            .vertices()
            .iter()
            .map(|v| format!("P{v}"))
            .collect();
        let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
        for e in &self.edges {
            edges
                .entry((e.src, e.dst))
                .or_default()
                .push(format!("S{}", e.name));
        }
        CkFamily {
            rep: self.representation(),
            vertices,
            edges,
        }
    }
}
