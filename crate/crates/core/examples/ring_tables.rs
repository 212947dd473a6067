//! Builds the invariant ring of S^[4] and prints the degree-4 product table.

#![allow(clippy::needless_range_loop)]

use hilbert_k3::invariants::DEG4_NAMES;
use hilbert_k3::pipeline;
use hilbert_k3::rational::format_q;

fn show(v: &[hilbert_k3::Q]) -> String {
    v.iter().map(format_q).collect::<Vec<_>>().join(", ")
}

fn main() -> hilbert_k3::Result<()> {
    let ring = pipeline::four_ring()?;
    println!("δ² = ({}) in W, X, Y, Z", show(ring.delta_squared()));
    println!("θ  = ({})", show(ring.theta()));
    for i in 0..4 {
        for j in i..4 {
            println!(
                "{}·{} = ({}) in A…H",
                DEG4_NAMES[i],
                DEG4_NAMES[j],
                show(&ring.degree4_table()[i][j])
            );
        }
    }
    println!("∫θ⁴ = {}", format_q(&ring.theta4_direct()?));
    println!("∫δ⁸ = {}", format_q(&ring.delta8_direct()?));
    Ok(())
}
