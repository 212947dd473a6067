//! Class of a Lagrangian P⁴: as a function of x = (λ, λ), then at a
//! chosen point, then the quartic constraint and the final class.

use hilbert_k3::rational::{format_q, parse_q};
use hilbert_k3::{diophantine, pipeline, plane};

fn main() -> hilbert_k3::Result<()> {
    let data = pipeline::intersection_data()?;
    let sym = plane::symbolic_plane_class(data)?;
    for (i, name) in plane::BASIS.iter().enumerate() {
        println!("{name:>4}: {}   [y: {}]", sym.constant[i], sym.linear_y[i]);
    }
    let x = parse_q(&std::env::args().nth(1).unwrap_or_else(|| "-54".into()))?;
    let c = plane::solve_plane(data, &x, &parse_q("1")?)?;
    let v: Vec<String> = c.coefficients.iter().map(format_q).collect();
    println!("at x = {}, y = 1: ({})", format_q(&x), v.join(", "));
    let q = pipeline::quartic_relation()?;
    let k: Vec<String> = q.coeffs.iter().map(format_q).collect();
    println!(
        "[P⁴]² = 5 ⇔ y² = quartic with coefficients ({})",
        k.join(", ")
    );
    let hits = diophantine::search_c1(pipeline::c1_curve()?, 100_000, 1)?;
    let fc = plane::final_class(data, &diophantine::admissible_solutions(&hits))?;
    let v: Vec<String> = fc.coefficients.iter().map(format_q).collect();
    println!(
        "final class ({}), (ℓ, ℓ) = {}",
        v.join(", "),
        format_q(&fc.line_square)
    );
    Ok(())
}
