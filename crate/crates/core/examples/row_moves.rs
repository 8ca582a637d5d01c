//! Row-addition moves on `B = Aᵀ − I` relating the two graphs attached to
//! Gr(2,4).
//!
//! Run with `cargo run --example row_moves`.

use afcore::graph::named::{l24, l24_tilde};
use afcore::moves::{self, DEFAULT_MAX_DEPTH};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let from = l24_tilde();
    let to = l24();
    let start = moves::b_matrix(&from)?;
    println!("B before:");
    for row in start.matrix().to_rows() {
        println!("  {row:?}");
    }
    let seq = moves::find_move_sequence(&from, &to, DEFAULT_MAX_DEPTH)?
        .ok_or("no sequence within the depth bound")?;
    let mut b = start.clone();
    for &(i, j) in &seq {
        b = b.apply_row_add(i, j)?;
        println!("add row {} to row {}", i + 1, j + 1);
    }
    println!("B after:");
    for row in b.matrix().to_rows() {
        println!("  {row:?}");
    }
    assert_eq!(&b, &moves::b_matrix(&to)?);
    println!(
        "row 3 to row 4 legal in L24: {}",
        moves::legal_row_add(&to, 2, 3)?
    );
    Ok(())
}
