//! Fujiki constants γ(μ) of K3^[4], extracted from localization.

use hilbert_k3::pipeline;
use hilbert_k3::rational::format_q;

fn main() -> hilbert_k3::Result<()> {
    let t = pipeline::fujiki_table()?;
    println!("{} equations for {} unknowns", t.equations, t.entries.len());
    for (shape, e) in &t.entries {
        println!(
            "{:<16} ∫ = {:>12}   γ = {}",
            shape.to_string(),
            format_q(&e.raw),
            format_q(&e.gamma)
        );
    }
    Ok(())
}
