//! Closure, reduction, loops and amplification of a small relation, plus
//! hereditary/saturated subsets of the resulting graph.
//!
//! Run with `cargo run --example graph_transforms`.

use afcore::graph::named::gr24_hasse;
use afcore::DagRelation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let hasse = gr24_hasse();
    let closure = hasse.transitive_closure();
    println!(
        "Hasse diagram: {} arrows, closure: {} arrows",
        hasse.len(),
        closure.len()
    );
    assert_eq!(closure.transitive_reduction().pairs(), hasse.pairs());

    let e_r = closure.add_loops();
    let f_r = closure.amplify();
    println!(
        "E_R has {} edges, F_R has {} edge classes",
        e_r.edge_count(),
        f_r.edge_count()
    );
    println!("E_R as JSON: {}", e_r.to_json());

    // The sink is a hereditary saturated set; the source is not.
    let top = ["6"];
    let bottom = ["1"];
    println!("{top:?}: {:?}", e_r.subset_flags(&top)?);
    println!("{bottom:?}: {:?}", e_r.subset_flags(&bottom)?);
    let quotient = e_r.quotient_graph(&top)?;
    println!("E_R / {top:?} keeps {} vertices", quotient.vertex_count());

    let from_json = DagRelation::from_json(&hasse.to_json())?;
    assert_eq!(from_json.pairs(), hasse.pairs());
    Ok(())
}
