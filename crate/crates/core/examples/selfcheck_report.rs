//! Runs every consistency check and writes the report as JSON.
//! Pass a path to write to a file instead of stdout.

use hilbert_k3::selfcheck::{run_all, Options};

fn main() -> hilbert_k3::Result<()> {
    let (report, summary) = run_all(&Options::default());
    for (n, ok) in &summary {
        eprintln!("criterion {n}: {}", if *ok { "pass" } else { "FAIL" });
    }
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(path, report.to_json())?,
        None => println!("{}", report.to_json()),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(hilbert_k3::Error::CheckFailed(format!(
            "{} checks failed",
            report.failures().count()
        )))
    }
}
