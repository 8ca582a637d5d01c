//! Positivity in `K⁰(ℂPⁿ⁻¹) = ℤ[x]/(xⁿ)`: line-bundle certificates,
//! non-membership proofs, and why no unital order embedding of the quantum
//! dimension group exists.
//!
//! Run with `cargo run --example projective_k_theory`.

use afcore::projective::{self, PolyModX};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, s) in [
        (2, "3,4"),
        (2, "1,-7"),
        (3, "2,0,1"),
        (3, "1,1,0"),
        (3, "1,0,-1"),
        (4, "0,1,0,0"),
    ] {
        let p = PolyModX::parse(n, s)?;
        let report = projective::cone_report(&p, 10);
        println!("n={n} {p}: {}", serde_json::to_string(&report)?);
    }

    let refutation = projective::refute_unital_order_embedding(3);
    for w in &refutation.witnesses {
        println!("1 - {}[P_n] = {} positive: {}", w.k, w.element, w.positive);
    }
    println!(
        "first k with a negative constant term: {:?}; {}",
        refutation.first_violation_k, refutation.conclusion
    );
    Ok(())
}
