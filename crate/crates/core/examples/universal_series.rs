//! Bott localization on P² and P¹×P¹: fixed points and the universal
//! series A(z), B(z) of the genus.

use hilbert_k3::localization::{fixed_points, Surface};
use hilbert_k3::pipeline;

fn main() -> hilbert_k3::Result<()> {
    for s in [Surface::P2, Surface::P1xP1] {
        let counts: Vec<usize> = (1..=4)
            .map(|n| fixed_points(s, n).map(|f| f.len()))
            .collect::<Result<_, _>>()?;
        println!("fixed points on {}^[n], n = 1..4: {counts:?}", s.name());
    }
    let u = pipeline::universal_series()?;
    println!("sign chosen: {:?} (rejected {:?})", u.sign, u.rejected);
    for k in 1..=3 {
        println!("A: z^{k}: {}", u.a.coeff(k));
        println!("B: z^{k}: {}", u.b.coeff(k));
    }
    Ok(())
}
