//! The map from the teardrop graph algebra into the path representation of
//! the lens-space graph, checked on walks away from the truncation.
//!
//! Run with `cargo run --example lens_isomorphism [r] [truncation]`.

use afcore::operator::check::{all_pass, check_ck_family, check_relations};
use afcore::operator::images::lens_iso_images;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let r: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let trunc: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(8);
    let n_cap = 4;
    let iso = lens_iso_images(r, n_cap, trunc)?;
    println!(
        "path space of dimension {}, {} edge images",
        iso.path.dim(),
        r * n_cap
    );
    let ck = check_ck_family(&iso.family, &iso.target, n_cap, iso.interior())?;
    for res in ck.iter().filter(|x| !x.pass) {
        println!("FAIL {}: residual {}", res.name, res.residual);
    }
    let tele = check_relations(
        &iso.family.rep,
        &iso.telescoping_relations(),
        iso.interior(),
    )?;
    for res in &tele {
        println!("{}: {}", res.name, if res.pass { "exact" } else { "fails" });
    }
    println!("all relations pass: {}", all_pass(&ck) && all_pass(&tele));
    Ok(())
}
