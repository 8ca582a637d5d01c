use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{index_vertices, GraphError, MultiGraph, Multiplicity, RelationJson};
use crate::matrix::IntMatrix;

/// A loop-free relation `R ⊆ V × V` without directed cycles.
///
/// Acyclicity is checked on construction, so every value of this type is a
/// valid input for the graph transforms below.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RelationJson", into = "RelationJson")]
pub struct DagRelation {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    pairs: BTreeSet<(usize, usize)>,
    /// Some topological order of the vertices.
    topo: Vec<usize>,
}

impl DagRelation {
    pub fn new<I, S, P, A, B>(vertices: I, pairs: P) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        P: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let index = index_vertices(&vertices)?;
        let mut idx_pairs = BTreeSet::new();
        for (a, b) in pairs {
            let (a, b) = (a.as_ref(), b.as_ref());
            let s = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let t = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            idx_pairs.insert((s, t));
        }
        Self::build(vertices, index, idx_pairs)
    }

    pub fn from_indices<I, S>(
        vertices: I,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let index = index_vertices(&vertices)?;
        let n = vertices.len();
        let mut idx_pairs = BTreeSet::new();
        for (s, t) in pairs {
            if s >= n {
                return Err(GraphError::IndexOutOfRange(s));
            }
            if t >= n {
                return Err(GraphError::IndexOutOfRange(t));
            }
            idx_pairs.insert((s, t));
        }
        Self::build(vertices, index, idx_pairs)
    }

    /// The edge relation of `g`, ignoring multiplicities. Loops are cycles.
    pub fn from_graph(g: &MultiGraph) -> Result<Self, GraphError> {
        Self::from_indices(g.vertices().to_vec(), g.edges().map(|e| (e.src, e.dst)))
    }

    /// Like [`from_graph`](Self::from_graph) but discards loops first, which
    /// recovers `R` from `E_R`.
    pub fn from_graph_without_loops(g: &MultiGraph) -> Result<Self, GraphError> {
        Self::from_indices(
            g.vertices().to_vec(),
            g.edges().filter(|e| e.src != e.dst).map(|e| (e.src, e.dst)),
        )
    }

    fn build(
        vertices: Vec<String>,
        index: HashMap<String, usize>,
        pairs: BTreeSet<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = MultiGraph {
            vertices: vertices.clone(),
            index: index.clone(),
            edges: Default::default(),
        };
        for &(s, t) in &pairs {
            if s == t {
                return Err(GraphError::CyclicInput(vertices[s].clone()));
            }
            g.edges.insert((s, t), Multiplicity::ONE);
        }
        let topo = match g.topological_order() {
            Some(order) => order,
            None => {
                let on_cycle = first_vertex_on_cycle(&g);
                return Err(GraphError::CyclicInput(vertices[on_cycle].clone()));
            }
        };
        Ok(DagRelation {
            vertices,
            index,
            pairs,
            topo,
        })
    }

    /// Chain `1 -> 2 -> … -> n` on vertices `"1"..="n"`.
    pub fn chain(n: usize) -> Self {
        Self::from_indices(numbered(n), (1..n).map(|i| (i - 1, i))).expect("chain is acyclic")
    }

    /// Standard strict total order on `"1"..="n"`.
    pub fn total_order(n: usize) -> Self {
        Self::from_indices(
            numbered(n),
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))),
        )
        .expect("total order is acyclic")
    }

    /// No pairs at all.
    pub fn antichain(n: usize) -> Self {
        Self::from_indices(numbered(n), std::iter::empty()).expect("antichain is acyclic")
    }

    /// Vertices `"0"..="r"` with `0 -> i` for every `i ≥ 1`.
    pub fn teardrop(r: usize) -> Self {
        let vertices: Vec<String> = (0..=r).map(|i| i.to_string()).collect();
        Self::from_indices(vertices, (1..=r).map(|i| (0, i))).expect("teardrop is acyclic")
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

    /// Pairs by vertex index, sorted.
    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    /// Pairs by vertex name, sorted by index.
    pub fn named_pairs(&self) -> Vec<(&str, &str)> {
        self.pairs
            .iter()
            .map(|&(s, t)| (self.vertices[s].as_str(), self.vertices[t].as_str()))
            .collect()
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.pairs.contains(&(s, t))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.pairs.range((v, 0)..(v + 1, 0)).map(|&(_, t)| t)
    }

    /// `reach[v][w]` iff there is a walk of positive length `v -> w`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut reach = vec![vec![false; n]; n];
        for &v in self.topo.iter().rev() {
            let succ: Vec<usize> = self.successors(v).collect();
            for w in succ {
                let below = reach[w].clone();
                let row = &mut reach[v];
                row[w] = true;
                for (x, y) in row.iter_mut().zip(below) {
                    *x |= y;
                }
            }
        }
        reach
    }

    /// All pairs joined by a walk of positive length.
    pub fn transitive_closure(&self) -> DagRelation {
        let reach = self.reachability();
        let pairs = pairs_of(&reach);
        self.with_pairs(pairs)
    }

    /// The Hasse diagram: pairs `(v, w)` of the closure with no `u` such that
    /// `v -> u -> w` in the closure.
    pub fn transitive_reduction(&self) -> DagRelation {
        let reach = self.reachability();
        let n = self.vertices.len();
        let mut pairs = BTreeSet::new();
        for v in 0..n {
            for w in 0..n {
                if reach[v][w] && !(0..n).any(|u| reach[v][u] && reach[u][w]) {
                    pairs.insert((v, w));
                }
            }
        }
        self.with_pairs(pairs)
    }

    /// `E_R`: the relation plus one loop at every vertex, all multiplicity 1.
    pub fn add_loops(&self) -> MultiGraph {
        let mut g = self.as_graph();
        for v in 0..self.vertices.len() {
            g.edges.insert((v, v), Multiplicity::ONE);
        }
        g
    }

    /// `F_R`: every pair of the relation becomes infinitely many edges.
    pub fn amplify(&self) -> MultiGraph {
        let mut g = self.empty_graph();
        for &p in &self.pairs {
            g.edges.insert(p, Multiplicity::Infinite);
        }
        g
    }

    /// The relation as a graph with all multiplicities 1.
    pub fn as_graph(&self) -> MultiGraph {
        let mut g = self.empty_graph();
        for &p in &self.pairs {
            g.edges.insert(p, Multiplicity::ONE);
        }
        g
    }

    /// Adjacency matrix `Γ̃` of the relation.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut m = IntMatrix::zeros(n, n);
        for &(s, t) in &self.pairs {
            m[(s, t)] = 1;
        }
        m
    }

    /// Length of the longest walk starting at `v`.
    pub fn depth(&self, v: &str) -> Result<usize, GraphError> {
        let v = self.require(v)?;
        Ok(self.depths()[v])
    }

    /// Longest-walk length from every vertex.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.vertices.len()];
        for &v in self.topo.iter().rev() {
            depth[v] = self.successors(v).map(|w| depth[w] + 1).max().unwrap_or(0);
        }
        depth
    }

    /// The restriction of the relation to the vertices selected by `keep`,
    /// preserving their relative order.
    pub fn restrict(&self, keep: &[bool]) -> DagRelation {
        let kept: Vec<usize> = (0..self.vertices.len()).filter(|&v| keep[v]).collect();
        let mut new_index = vec![usize::MAX; self.vertices.len()];
        for (i, &v) in kept.iter().enumerate() {
            new_index[v] = i;
        }
        DagRelation::from_indices(
            kept.iter().map(|&v| self.vertices[v].clone()),
            self.pairs
                .iter()
                .filter(|&&(s, t)| keep[s] && keep[t])
                .map(|&(s, t)| (new_index[s], new_index[t])),
        )
        .expect("a restriction of an acyclic relation is acyclic")
    }

    fn with_pairs(&self, pairs: BTreeSet<(usize, usize)>) -> DagRelation {
        DagRelation::build(self.vertices.clone(), self.index.clone(), pairs)
            .expect("derived relation of a DAG is acyclic")
    }

    fn empty_graph(&self) -> MultiGraph {
        MultiGraph {
            vertices: self.vertices.clone(),
            index: self.index.clone(),
            edges: Default::default(),
        }
    }
}

impl PartialEq for DagRelation {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.pairs == other.pairs
    }
}

impl Eq for DagRelation {}

impl fmt::Debug for DagRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DagRelation")
            .field("vertices", &self.vertices)
            .field("pairs", &self.named_pairs())
            .finish()
    }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn pairs_of(reach: &[Vec<bool>]) -> BTreeSet<(usize, usize)> {
    reach
        .iter()
        .enumerate()
        .flat_map(|(v, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &r)| r)
                .map(move |(w, _)| (v, w))
        })
        .collect()
}

fn first_vertex_on_cycle(g: &MultiGraph) -> usize {
    (0..g.vertex_count())
        .find(|&v| g.reachable_from(v)[v])
        .unwrap_or(0)
}
