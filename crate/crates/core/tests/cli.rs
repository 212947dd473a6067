use hilbert_k3::cli::run;
use hilbert_k3::report::ReportDocument;

fn hk3(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("hk3").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn unknown_flag_prints_usage() {
    let (code, out) = hk3(&["--frobnicate"]);
    assert_ne!(code, 0);
    assert!(out.contains("Usage"), "{out}");
    let (code, _) = hk3(&["ring-tables", "--n", "7"]);
    assert_ne!(code, 0);
}

#[test]
fn ring_tables_three_json() {
    let (code, out) = hk3(&["ring-tables", "--n", "3", "--json"]);
    assert_eq!(code, 0, "{out}");
    let r = ReportDocument::from_json(&out).unwrap();
    assert!(r.passed());
    assert!(r.checks.iter().any(|c| c.detail == "15525"));
}

#[test]
fn plane_class_at_a_point() {
    let (code, out) = hk3(&["plane-class", "--x", "-126", "--y", "0"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[P⁴]²: 5"), "{out}");
    let (code, out) = hk3(&["plane-class", "--x", "0"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("error:"));
    let (code, _) = hk3(&["plane-class", "--y", "1"]);
    assert_ne!(code, 0);
}

#[test]
fn diophantine_subcommands() {
    let (code, out) = hk3(&["diophantine", "sieve"]);
    assert_eq!(code, 0, "{out}");
    assert!(
        out.contains("survivors: [-22, -11, -2, -1, 7, 14, 77, 154]"),
        "{out}"
    );
    let (code, out) = hk3(&["diophantine", "search", "--bound", "5000"]);
    assert_eq!(code, 0);
    assert!(out.contains("[(0, 0)]"), "{out}");
    let (code, out) = hk3(&["diophantine", "verify-points"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn verify_points_reads_a_file() {
    let dir = std::env::temp_dir().join(format!("hk3-points-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "E14 564480 ±49392000 integral\n").unwrap();
    let (code, out) = hk3(&[
        "diophantine",
        "verify-points",
        "--points",
        good.to_str().unwrap(),
    ]);
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "E14 564480 49392001 integral\n").unwrap();
    let (bad_code, _) = hk3(&[
        "--points",
        bad.to_str().unwrap(),
        "diophantine",
        "verify-points",
    ]);
    let (missing, _) = hk3(&[
        "--points",
        dir.join("none").to_str().unwrap(),
        "diophantine",
        "verify-points",
    ]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code, 0, "{out}");
    assert_eq!(bad_code, 1);
    assert_eq!(missing, 2);
}
