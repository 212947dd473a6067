//! c₂(S^[4]) from the Fujiki constants, then the table α(k, ℓ).

use hilbert_k3::pipeline;
use hilbert_k3::rational::format_q;

fn main() -> hilbert_k3::Result<()> {
    let s = pipeline::chern2()?;
    println!("candidates (u, v):");
    for (u, v) in &s.candidates {
        println!("  ({}, {})", format_q(u), format_q(v));
    }
    let c2: Vec<String> = s.coords.iter().map(format_q).collect();
    println!("c₂ = ({}) in W, X, Y, Z", c2.join(", "));
    let a = pipeline::alpha_table()?;
    for ((k, l), v) in &a.values {
        println!("α({k},{l}) = {}", format_q(v));
    }
    println!("checked on both S^[3] and S^[4]: {:?}", a.cross_checked);
    Ok(())
}
