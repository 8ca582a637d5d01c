//! Exact relation checks for the Plücker and `X⁶` generator images in
//! truncated Toeplitz tensor products, and the rank-one identities.
//!
//! Run with `cargo run --example plucker_relations`.

use afcore::operator::check::{all_pass, check_ck_family, check_relations};
use afcore::operator::images::{
    generator_interior, grassmann_core_images, grassmann_projection_relations, plucker_relations,
    plucker_rep, x6_generator_images, x6_relations, RankOneChecker,
};
use afcore::operator::InteriorSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 6;
    let rep = plucker_rep(n)?;
    for r in check_relations(&rep, &plucker_relations(), generator_interior())? {
        println!(
            "{:<40} degree {:?} on {} vectors: residual {}",
            r.name, r.degree, r.interior_dim, r.residual
        );
    }
    let x6 = x6_generator_images(n)?;
    let res = check_relations(&x6, &x6_relations(), generator_interior())?;
    println!("X6 relations pass: {}", all_pass(&res));

    let core = grassmann_core_images(n)?;
    let ck = check_ck_family(&core.family, &core.graph, 0, generator_interior())?;
    let proj = check_relations(
        &core.family.rep,
        &grassmann_projection_relations(),
        InteriorSpec::everything(),
    )?;
    println!(
        "Grassmann core: {} CK relations, all pass: {}",
        ck.len(),
        all_pass(&ck) && all_pass(&proj)
    );

    let mut rank_one = RankOneChecker::new(n)?;
    let ok = rank_one.check([1, 0, 2, 0], [0, 1, 1, 1])?;
    println!("V(n) Z6^|m| Z6*^|n| V(m)* = |n><m| for n=(1,0,2,0), m=(0,1,1,1): {ok}");
    Ok(())
}
