//! Flag-manifold relations from Cartan data: Gr(2,4) from `A₃` with
//! `S = {1,3}`, and a few other types.
//!
//! Run with `cargo run --example flag_manifold`.

use afcore::coxeter::{self, CartanInput, DEFAULT_MAX_SIZE};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = CartanInput::dynkin("A", 3, &[1, 3])?;
    let fg = coxeter::flag_graph(&c, DEFAULT_MAX_SIZE)?;
    for rep in fg.rep_table() {
        println!("{:>12}  length {}", rep.vertex, rep.length);
    }
    for (s, t) in fg.relation.named_pairs() {
        println!("{s} -> {t}");
    }

    for (kind, rank, subset) in [
        ("A", 2, vec![2]),
        ("B", 2, vec![1]),
        ("C", 3, vec![2, 3]),
        ("D", 4, vec![]),
    ] {
        let c = CartanInput::dynkin(kind, rank, &subset)?;
        let group = coxeter::enumerate_group(&c, DEFAULT_MAX_SIZE)?;
        let fg = coxeter::flag_graph(&c, DEFAULT_MAX_SIZE)?;
        println!(
            "{kind}{rank} S={subset:?}: |W| = {}, |W^S| = {}, {} arrows",
            group.len(),
            fg.relation.vertex_count(),
            fg.relation.len()
        );
    }
    Ok(())
}
