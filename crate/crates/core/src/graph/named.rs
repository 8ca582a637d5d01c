//! Small graphs that recur in examples and tests.

use super::{DagRelation, MultiGraph, Multiplicity};

/// Whether `i -> j` is an edge of `L_{2,4}` (1-based): `i ≤ j` except `3 -> 4`.
pub fn l24_edge(i: usize, j: usize) -> bool {
    i <= j && (i, j) != (3, 4)
}

/// The graph `L_{2,4}` on vertices `"1".."6"`, loops included.
pub fn l24() -> MultiGraph {
    let mut g = MultiGraph::new((1..=6).map(|i| i.to_string())).expect("distinct names");
    for i in 1..=6 {
        for j in 1..=6 {
            if l24_edge(i, j) {
                g.add_edge_by_index(i - 1, j - 1, Multiplicity::ONE)
                    .expect("indices in range");
            }
        }
    }
    g
}

/// The Hasse diagram of the six Schubert cells of `Gr(2,4)`:
/// `1 -> 2`, `2 -> 3`, `2 -> 4`, `3 -> 5`, `4 -> 5`, `5 -> 6`.
pub fn gr24_hasse() -> DagRelation {
    DagRelation::from_indices(
        (1..=6).map(|i| i.to_string()),
        [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)],
    )
    .expect("Hasse diagram is acyclic")
}

/// `L̃_{2,4} = E_R` for the Hasse diagram of `Gr(2,4)`.
pub fn l24_tilde() -> MultiGraph {
    gr24_hasse().add_loops()
}

/// `L₃^{r;1,r}`: the teardrop relation with a loop at every vertex.
pub fn lens_graph(r: usize) -> MultiGraph {
    DagRelation::teardrop(r).add_loops()
}

/// `F₁^{1,r}`: infinitely many edges `0 -> i` for `1 ≤ i ≤ r`.
pub fn teardrop_graph(r: usize) -> MultiGraph {
    DagRelation::teardrop(r).amplify()
}
