//! Dimension groups of `C*(F_R)` and of the gauge core of `C*(E_R)`, the
//! walk-count certificate that they agree, and an order-isomorphism search.
//!
//! Run with `cargo run --example dimension_groups`.

use afcore::dimension::{self, K0Element, DEFAULT_K_CHECK};
use afcore::graph::named::gr24_hasse;
use afcore::DagRelation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = gr24_hasse();
    let amplified = dimension::k0_amplified(&r);
    let (core, cert) = dimension::k0_core(&r, DEFAULT_K_CHECK)?;
    assert_eq!(core, amplified);
    println!(
        "Γ̃ is nilpotent of order {}, {} inequalities (Γᵏ)_vw ≥ k checked",
        cert.gamma_tilde_nilpotency_order,
        cert.checked_inequalities.len()
    );
    println!("Γ⁻¹ = {:?}", cert.gamma_inverse.to_rows());

    for x in [
        "1,-3,0,0,2,0",
        "0,-1,1,0,0,0",
        "0,0,1,-1,0,0",
        "0,0,0,0,0,0",
    ] {
        let x: K0Element = x.parse()?;
        println!("{x} positive: {}", amplified.contains(&x)?);
    }

    // Classes of the range projections of powers of the loop at vertex 1.
    for k in 1..=3 {
        println!("[Q_1,{k}] = {}", dimension::q_class(&r, "1", k)?);
    }

    let relabelled = DagRelation::new(
        ["a", "b", "c", "d", "e", "f"],
        [
            ("f", "e"),
            ("e", "d"),
            ("e", "c"),
            ("d", "b"),
            ("c", "b"),
            ("b", "a"),
        ],
    )?;
    match dimension::find_order_isomorphism(&amplified, &dimension::k0_amplified(&relabelled)) {
        Some(map) => println!("order isomorphism on vertices: {map:?}"),
        None => println!("not isomorphic"),
    }
    let chain = dimension::k0_amplified(&DagRelation::total_order(6));
    assert!(dimension::find_order_isomorphism(&amplified, &chain).is_none());
    Ok(())
}
