//! The integral-point analysis: sieve over v, a bounded scan of C₁, and
//! verification of the bundled curve points.

use hilbert_k3::{diophantine, pipeline};

fn main() -> hilbert_k3::Result<()> {
    let c1 = pipeline::c1_curve()?;
    println!("C₁: y² = {:?} (x⁴ … x⁰)", c1.coeffs);
    for (v, why) in diophantine::sieve_with_reasons() {
        println!("v = {v:>5}: {why:?}");
    }
    println!(
        "finer local test leaves {:?}",
        diophantine::local_survivors(c1)
    );
    let bound = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200_000);
    let hits = diophantine::search_c1(c1, bound, diophantine::thread_count())?;
    println!("points with |x₁| ≤ {bound}: {hits:?}");
    let report = diophantine::verify_points(&diophantine::load_points(None)?)?;
    println!(
        "{} listed points, all on their curves: {}, none of the form 175v²u²: {}",
        report.points.len(),
        report.all_on_curve(),
        report.none_of_required_form()
    );
    Ok(())
}
