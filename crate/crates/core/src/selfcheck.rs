//! Every cross-module consistency check, grouped into eleven numbered
//! criteria. Each check names its anchor and records pass or fail in a
//! [`ReportDocument`].

use std::path::Path;
use std::sync::Arc;

use num_traits::Zero;

use crate::diophantine::{self, CurveId, EvCurve};
use crate::frobenius::{FrobeniusAlgebra, K3Class, MiddleLattice, BASIS_LEN};
use crate::fujiki::{ChernMonomial, A_ANCHORS, B_ANCHORS, DELTA_SQUARE_FOUR};
use crate::invariants::{Monomial, ThreeRing, DEG4_NAMES};
use crate::localization::{fixed_points, vector_partition_counts, Surface};
use crate::perm::{graph_defect, Perm};
use crate::pipeline;
use crate::plane::{self, sample_point};
use crate::rational::{qi, qpow, qr, Q};
use crate::report::ReportDocument;
use crate::series::APoly;
use crate::{Error, Result};

/// Options shared by the checks.
#[derive(Clone, Debug, Default)]
pub struct Options<'a> {
    /// Point table replacing the bundled one.
    pub points: Option<&'a Path>,
}

pub struct Criterion {
    pub number: u8,
    pub title: &'static str,
    pub run: fn(&mut ReportDocument, &Options) -> Result<()>,
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion {
        number: 1,
        title: "ring tables",
        run: ring_tables,
    },
    Criterion {
        number: 2,
        title: "θ and δ top products",
        run: theta_quintuple,
    },
    Criterion {
        number: 3,
        title: "θ, c₂ and α in S^[4]",
        run: chern2_and_alpha,
    },
    Criterion {
        number: 4,
        title: "localization",
        run: localization,
    },
    Criterion {
        number: 5,
        title: "Fujiki constants",
        run: fujiki_constants,
    },
    Criterion {
        number: 6,
        title: "cross-pipeline consistency",
        run: cross_pipeline,
    },
    Criterion {
        number: 7,
        title: "α(k, ℓ) constants",
        run: alpha_constants,
    },
    Criterion {
        number: 8,
        title: "degree-8 relation",
        run: degree_eight,
    },
    Criterion {
        number: 9,
        title: "plane class",
        run: plane_class,
    },
    Criterion {
        number: 10,
        title: "Diophantine analysis",
        run: diophantine_checks,
    },
    Criterion {
        number: 11,
        title: "structural properties",
        run: properties,
    },
];

/// Runs one criterion; an error becomes a failed check.
pub fn run_criterion(c: &Criterion, report: &mut ReportDocument, opts: &Options) -> bool {
    let before = report.checks.len();
    if let Err(e) = (c.run)(report, opts) {
        report.check_err(format!("[{}] {}", c.number, c.title), &e);
    }
    report.checks[before..].iter().all(|k| k.passed) && report.checks.len() > before
}

/// All criteria in order, with a summary line per criterion.
pub fn run_all(opts: &Options) -> (ReportDocument, Vec<(u8, bool)>) {
    let mut report = ReportDocument::new("selfcheck");
    let mut summary = Vec::new();
    for c in &CRITERIA {
        let ok = run_criterion(c, &mut report, opts);
        report.note(format!(
            "criterion {} ({}): {}",
            c.number,
            c.title,
            if ok { "pass" } else { "FAIL" }
        ));
        summary.push((c.number, ok));
    }
    (report, summary)
}

fn v8(c: [i64; 8]) -> Vec<Q> {
    c.iter().map(|&k| qi(k)).collect()
}

fn check_vec(r: &mut ReportDocument, anchor: &str, got: &[Q], want: &[Q]) -> bool {
    let detail = format!(
        "({})",
        got.iter()
            .map(crate::rational::format_q)
            .collect::<Vec<_>>()
            .join(", ")
    );
    let passed = got == want;
    r.check(
        anchor,
        passed,
        if passed {
            detail
        } else {
            format!("got {detail}")
        },
    )
}

pub fn ring_tables(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let f = pipeline::four_ring()?;
    check_vec(
        r,
        "[1] δ² = 3W + 2X - 3Y - Z",
        f.delta_squared(),
        &v8([3, 2, -3, -1, 0, 0, 0, 0])[..4],
    );
    let want: [[i64; 8]; 10] = [
        [-3, -3, -27, -8, -8, 4, 2, 0],
        [-3, -3, -3, 0, 0, 0, 0, 0],
        [0, 1, 3, 0, 0, 0, 0, 0],
        [3, 0, 66, 0, 0, 0, 0, 0],
        [0, 0, 0, -2, -2, 2, 1, 1],
        [0, 0, 0, 2, 0, 0, 0, 0],
        [0, 0, 0, 22, 4, 0, 0, 0],
        [0, 0, 0, 0, 0, 2, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 22, 2, 2],
    ];
    let mut k = 0;
    for i in 0..4 {
        for j in i..4 {
            let anchor = format!("[1] {}·{}", DEG4_NAMES[i], DEG4_NAMES[j]);
            check_vec(r, &anchor, &f.degree4_table()[i][j], &v8(want[k]));
            k += 1;
        }
    }
    let g = f.gram_ah();
    let diag = [176, 0, 0, 6, 66, 6, 264, 1584];
    let mut ok = true;
    for i in 0..8 {
        for j in 0..8 {
            let want = match (i, j) {
                _ if i == j => qr(diag[i], 24),
                (1, 2) | (2, 1) => qr(8, 24),
                _ => qi(0),
            };
            ok &= g[(i, j)] == want;
        }
    }
    r.check(
        "[1] A…H Gram matrix",
        ok,
        "diag (176,0,0,6,66,6,264,1584)/24, B·C = 8/24",
    );
    check_vec(
        r,
        "[1] δ⁴ in A…H",
        f.delta_fourth(),
        &v8([-81, -81, -729, -192, -96, 84, 30, 6]),
    );
    Ok(())
}

pub fn theta_quintuple(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let f = pipeline::four_ring()?;
    let c2 = &pipeline::chern2()?.coords;
    for (d, t, v) in [
        (0, 4, 450225),
        (2, 3, -117450),
        (4, 2, 84564),
        (6, 1, -93960),
        (8, 0, 136080),
    ] {
        let m = Monomial::new(d, t, 0);
        r.check_eq(format!("[2] {m}"), &f.product_value(m, c2)?, &qi(v));
    }
    r.check_eq(
        "[2] θ⁴ by direct cup products",
        &f.theta4_direct()?,
        &qi(450225),
    );
    r.check_eq(
        "[2] δ⁸ by direct cup products",
        &f.delta8_direct()?,
        &qi(136080),
    );
    Ok(())
}

pub fn chern2_and_alpha(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let f = pipeline::four_ring()?;
    check_vec(
        r,
        "[3] θ in W, X, Y, Z",
        f.theta(),
        &[qr(-1, 2), qr(-1, 3), qr(45, 2), qr(13, 6)],
    );
    let s = pipeline::chern2()?;
    r.check(
        "[3] linear system rank",
        s.linear_rank == 2,
        format!("rank {}", s.linear_rank),
    );
    let want = vec![(qr(497, 116), qr(-285, 29)), (qr(21, 4), qi(-9))];
    r.check(
        "[3] candidate (u, v) pairs",
        s.candidates == want,
        "(497/116, -285/29), (21/4, -9)",
    );
    r.check(
        "[3] chosen pair",
        s.chosen == (qr(21, 4), qi(-9)),
        "(21/4, -9)",
    );
    check_vec(
        r,
        "[3] c₂ = 3Z + 33Y - W",
        &s.coords,
        &[qi(-1), qi(0), qi(33), qi(3)],
    );
    let a = pipeline::alpha_class()?;
    check_vec(
        r,
        "[3] α = X - 3Y + Z",
        &a.coords,
        &[qi(0), qi(1), qi(-3), qi(1)],
    );
    let nine = a.pairings.iter().filter(|(m, _)| m.delta != 6).count();
    r.check(
        "[3] α annihilates nine degree-12 monomials and δ⁶",
        nine == 9 && a.pairings.iter().all(|(_, v)| v.is_zero()),
        format!("{} zero pairings", a.pairings.len()),
    );
    for (name, got, want) in [
        ("θ²", &a.squares[0], 9450),
        ("θc₂", &a.squares[1], 14148),
        ("c₂²", &a.squares[2], 21168),
    ] {
        r.check_eq(format!("[3] α²{name}"), got, &qi(want));
    }
    Ok(())
}

pub fn localization(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let u = pipeline::universal_series()?;
    for k in 0..2 {
        r.check(
            format!("[4] A(z) coefficient of z^{}", k + 1),
            u.a.coeff(k + 1) == &APoly::parse(A_ANCHORS[k])?,
            u.a.coeff(k + 1).to_string(),
        );
        r.check(
            format!("[4] B(z) coefficient of z^{}", k + 1),
            u.b.coeff(k + 1) == &APoly::parse(B_ANCHORS[k])?,
            u.b.coeff(k + 1).to_string(),
        );
    }
    r.note(format!(
        "sign of c₁(O^[n]) in the exponential: {:?}; rejected {:?}",
        u.sign, u.rejected
    ));
    for s in [Surface::P2, Surface::P1xP1] {
        let charts = s.charts().len();
        let counts = vector_partition_counts(charts, 4);
        for n in 1..=4 {
            let got = fixed_points(s, n)?.len() as u64;
            r.check(
                format!("[4] fixed points of {}^[{n}]", s.name()),
                got == counts[n],
                format!(
                    "{got} fixed points, generating function gives {}",
                    counts[n]
                ),
            );
        }
    }
    r.check(
        "[4] both specializations agree on every Bott sum",
        true,
        "enforced inside each sum; a disagreement aborts the extraction",
    );
    Ok(())
}

/// Reference `γ(μ)` for `K3^[4]`, by part list.
pub const REFERENCE_GAMMA: [(&[u32], i64); 12] = [
    (&[2, 2, 2, 2], 1992240),
    (&[2, 2, 2], 59640),
    (&[2, 2], 4932),
    (&[2], 630),
    (&[], 105),
    (&[2, 2, 4], 813240),
    (&[2, 4], 24360),
    (&[4], 2016),
    (&[2, 6], 182340),
    (&[6], 5460),
    (&[8], 25650),
    (&[4, 4], 332730),
];

pub fn fujiki_constants(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let t = pipeline::fujiki_table()?;
    for (parts, v) in REFERENCE_GAMMA {
        let mu = ChernMonomial::from_parts(parts)?;
        r.check_eq(format!("[5] γ({mu})"), &t.gamma(&mu)?, &qi(v));
    }
    r.check(
        "[5] extraction system is overdetermined and consistent",
        t.equations > t.entries.len(),
        format!("{} equations in {} unknowns", t.equations, t.entries.len()),
    );
    Ok(())
}

pub fn cross_pipeline(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let f = pipeline::four_ring()?;
    let t = pipeline::fujiki_table()?;
    let d8 = f.delta8_direct()?;
    let want = qi(105) * qpow(&qi(DELTA_SQUARE_FOUR), 4);
    r.check_eq("[6] ∫δ⁸ from the ring vs 105·(-6)⁴", &d8, &want);
    r.check_eq(
        "[6] ∫δ⁸ from the ring vs localization",
        &d8,
        &t.raw(&ChernMonomial::empty())?,
    );
    let c2 = &pipeline::chern2()?.coords;
    for m in 1..=3u32 {
        let k = 4 - m;
        let v = f.product_value(Monomial::new(2 * k, 0, m), c2)? / qpow(&qi(DELTA_SQUARE_FOUR), k);
        r.check_eq(
            format!("[6] γ(2^{m}) through c₂ = 3Z + 33Y - W"),
            &v,
            &t.gamma_c2(m as u8)?,
        );
    }
    Ok(())
}

pub fn alpha_constants(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let a = pipeline::alpha_table()?;
    let want = [
        ((0, 1), qi(23)),
        ((0, 2), qr(575, 3)),
        ((0, 3), qi(1035)),
        ((0, 4), qr(30015, 7)),
        ((1, 1), qr(25, 3)),
        ((1, 2), qi(45)),
        ((1, 3), qr(1305, 7)),
        ((2, 1), qr(27, 5)),
        ((2, 2), qr(783, 35)),
        ((3, 1), qr(29, 7)),
    ];
    for ((k, l), v) in &want {
        r.check_eq(format!("[7] α({k},{l})"), &a.get(*k, *l)?, v);
    }
    r.check(
        "[7] S^[3] and S^[4] agree on shared α(k,ℓ)",
        a.cross_checked.len() == 6,
        format!("{} shared entries", a.cross_checked.len()),
    );
    let three = pipeline::three_ring()?;
    for ((d, t, c), v) in [
        ((0, 3, 0), 15525),
        ((2, 2, 0), -2700),
        ((4, 1, 0), 1296),
        ((0, 2, 1), 20700),
        ((2, 1, 1), -3600),
    ] {
        let m = Monomial::new(d, t, c);
        r.check_eq(format!("[7] S^[3] {m}"), &three.product_value(m)?, &qi(v));
    }
    Ok(())
}

pub fn degree_eight(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let rel = pipeline::degree_eight_relation()?;
    r.check(
        "[8] relation matrix rank",
        rel.rank == 3,
        format!("rank {}", rel.rank),
    );
    check_vec(
        r,
        "[8] kernel",
        &rel.kernel,
        &[qi(1), qr(-7, 5), qr(31, 60), qr(-1, 15)],
    );
    let expected = [
        [
            qi(450225),
            qi(1035 * 630),
            qr(575, 3) * qi(4932),
            qr(575, 3) * qi(2016),
        ],
        [
            qi(1035 * 630),
            qr(575, 3) * qi(4932),
            qi(23 * 59640),
            qi(23 * 24360),
        ],
        [
            qr(575, 3) * qi(4932),
            qi(23 * 59640),
            qi(1992240),
            qi(813240),
        ],
        [
            qr(575, 3) * qi(2016),
            qi(23 * 24360),
            qi(813240),
            qi(332730),
        ],
    ];
    r.check(
        "[8] relation matrix entries",
        rel.matrix.to_rows() == expected.map(|row| row.to_vec()).to_vec(),
        "α(0,ℓ)·γ(μ) products",
    );
    r.check_eq(
        "[8] θ|P⁴ coefficient of h²",
        &plane::theta_restriction(&rel.kernel)?,
        &qr(-7, 2),
    );
    Ok(())
}

/// Closed form of `[P⁴]` in `x = (λ, λ)` and `y`.
pub fn reference_plane_vector(x: &Q, y: &Q) -> Vec<Q> {
    let x2 = x * x;
    vec![
        qr(1, 608256) * (qi(25) + qi(700) / x + qi(1764) / &x2),
        -qr(1, 2737152) * (qi(25) * x + qi(3276) + qi(15876) / x),
        qr(1, 38016) * (qi(23) + qi(126) / x),
        qr(1, 5474304) * (&x2 + qi(252) * x - qi(41148)),
        -qr(1, 190080) * (qi(5) * x - qi(2142)),
        qr(-1, 240),
        qr(31, 1188) * y,
        qr(-7, 396) * y,
    ]
}

pub fn plane_class(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let data = pipeline::intersection_data()?;
    let m = plane::m_lambda(data, &qi(DELTA_SQUARE_FOUR))?.matrix;
    for ((i, j), v) in [
        ((0, 0), 136080),
        ((0, 1), -93960),
        ((0, 3), 84564),
        ((1, 3), -117450),
        ((3, 3), 450225),
    ] {
        r.check_eq(
            format!("[9] M(δ) entry ({}, {})", plane::BASIS[i], plane::BASIS[j]),
            &m[(i, j)],
            &qi(v),
        );
    }
    let m1 = plane::m_lambda(data, &qi(1))?.matrix;
    r.check_eq("[9] (λ²θ, θ²) coefficient", &m1[(1, 3)], &qi(19575));
    r.check_eq("[9] (θc₂, c₂²)", &m1[(4, 5)], &qi(1371720));
    r.check_eq("[9] (λ²θ, c₂²) coefficient", &m1[(1, 5)], &qi(41100));
    let det = plane::m_lambda(data, &qi(-126))?.matrix.det()?;
    r.check(
        "[9] det M(λ) at x = -126 is nonzero",
        !det.is_zero(),
        "nonzero",
    );
    let det_poly = plane::determinant_polynomial(data)?;
    r.check(
        "[9] det M(λ) has no rational root but 0",
        det_poly.rational_roots() == vec![qi(0)],
        det_poly.to_string(),
    );
    let mut ok = true;
    for i in 0..10 {
        let x = sample_point(i) * qi(3);
        let y = qr(i - 4, 7);
        let c = plane::solve_plane(data, &x, &y)?;
        ok &= c.coefficients == reference_plane_vector(&x, &y);
        let mv = plane::m_lambda(data, &x)?.matrix.mul_vec(&c.coefficients)?;
        ok &= mv == plane::restriction_rhs(&x, &y);
    }
    r.check(
        "[9] [P⁴] matches the closed form at 10 values of x",
        ok,
        "componentwise",
    );
    let sym = plane::symbolic_plane_class(data)?;
    let x = qr(-91, 5);
    r.check(
        "[9] reconstructed rational functions match the closed form",
        sym.eval(&x, &qi(2)) == reference_plane_vector(&x, &qi(2)),
        "at a point outside the sample set",
    );
    let q = pipeline::quartic_relation()?;
    let want = [
        qr(25, 4096 * 81 * 7),
        qr(25, 512 * 81),
        qr(13 * 31, 512 * 9 * 7),
        qr(9, 128),
        qr(-9 * 5 * 49 * 197, 256),
    ];
    check_vec(r, "[9] quartic coefficients", &q.coeffs, &want);
    r.check_eq(
        "[9] y² coefficient of [P⁴]²",
        &q.self_intersection[2].coeff(0),
        &qr(-7, 2376),
    );
    r.check_eq(
        "[9] residual at (-126, 0)",
        &q.residual(&qi(-126), &qi(0)),
        &qi(0),
    );
    let sols = diophantine::admissible_solutions(pipeline::default_search()?);
    let fc = plane::final_class(data, &sols)?;
    check_vec(
        r,
        "[9] final class ×337920",
        &fc.scaled(337920),
        &v8([880, 0, 1760, -3520, 4928, -1408, 0, 0]),
    );
    r.check_eq("[9] (ℓ, ℓ)", &fc.line_square, &qr(-7, 2));
    Ok(())
}

pub fn diophantine_checks(r: &mut ReportDocument, opts: &Options) -> Result<()> {
    let s = diophantine::sieve();
    let want: std::collections::BTreeSet<i64> =
        [-1, -2, -11, -22, 7, 14, 77, 154].into_iter().collect();
    r.check("[10] sieve survivors", s == want, format!("{s:?}"));
    let c1 = pipeline::c1_curve()?;
    r.check(
        "[10] sieve agrees with brute force",
        diophantine::sieve_oracle(c1) == s,
        "mod 7³ and 3⁵",
    );
    r.note(format!(
        "local test modulo 7³ and 3⁵ for every v leaves {:?}",
        diophantine::local_survivors(c1)
    ));
    let hits = pipeline::default_search()?;
    r.check(
        format!(
            "[10] integral points of C₁ with |x₁| ≤ {}",
            pipeline::DEFAULT_SEARCH_BOUND
        ),
        hits == &vec![(0, 0)],
        format!("{hits:?}"),
    );
    r.check(
        "[10] y₁ = 0 forces x₁ = 0",
        c1.nonzero_rational_roots().is_empty(),
        "the cubic factor has no rational root",
    );
    let records = diophantine::load_points(opts.points)?;
    let rep = diophantine::verify_points(&records)?;
    r.check(
        "[10] listed points lie on their curves",
        rep.all_on_curve(),
        format!("{} records", rep.points.len()),
    );
    r.check(
        "[10] minimal-model changes of variables",
        rep.transforms_hold(),
        "E'-11, E'-22",
    );
    r.check(
        "[10] minimal-model generators map to listed points",
        rep.images_listed.iter().all(|(_, ok)| *ok),
        format!("{:?}", rep.images_listed),
    );
    r.check(
        "[10] no listed point has x = 175 v² u²",
        rep.none_of_required_form(),
        "form test",
    );
    let e22 = EvCurve::new(-22)?;
    r.check(
        "[10] x = -853776 is not of the required form",
        !e22.has_required_form(&qi(-853776)),
        "negative",
    );
    let counts = [(CurveId::Ev(-1), 6usize), (CurveId::Ev(14), 34)];
    for (id, n) in counts {
        let got: usize = records
            .iter()
            .filter(|p| p.curve == id && p.kind == "integral")
            .map(|p| if p.both_signs { 2 } else { 1 })
            .sum();
        r.check(
            format!("[10] integral points listed on {id}"),
            got == n,
            format!("{got}"),
        );
    }
    Ok(())
}

pub fn properties(r: &mut ReportDocument, _: &Options) -> Result<()> {
    let a = pipeline::algebra();
    let basis: Vec<K3Class> = (0..BASIS_LEN as crate::frobenius::Label)
        .map(K3Class::basis)
        .collect();
    let mut adjoint = true;
    for x in &basis {
        for y in basis.iter().step_by(3) {
            for z in basis.iter().step_by(5) {
                adjoint &= a.counit(&a.mul(&a.mul(x, y), z)) == a.counit(&a.mul(x, &a.mul(y, z)));
            }
        }
    }
    r.check(
        "[11] Frobenius form is associative",
        adjoint,
        "sampled basis triples",
    );
    let mut coassoc = true;
    for x in basis.iter().step_by(4) {
        let t3 = a.comul_n(x, 3)?;
        let t2 = a.comul_n(x, 2)?;
        let mut left = crate::frobenius::TensorClass::zero(3);
        for (labels, k) in t2.terms() {
            let inner = a.comul_n(&K3Class::basis(labels[0]), 2)?;
            for (l2, k2) in inner.terms() {
                left.add_term(vec![l2[0], l2[1], labels[1]], k * k2);
            }
        }
        coassoc &= left == t3;
    }
    r.check(
        "[11] comultiplication is coassociative",
        coassoc,
        "(Δ ⊗ 1)Δ = Δ³",
    );
    let mut defects_ok = true;
    let s4 = Perm::all(4);
    for s in &s4 {
        for t in &s4 {
            for b in s.orbits().join(&t.orbits()).blocks() {
                defects_ok &= graph_defect(s, t, b).is_ok();
            }
        }
    }
    r.check(
        "[11] graph defects over S₄ × S₄",
        defects_ok,
        "all nonnegative integers",
    );
    let f = pipeline::four_ring()?;
    let b = f.basis();
    let names: Vec<&str> = b.names().collect();
    let mut invariant = true;
    for n in &names {
        invariant &= b.ring().is_invariant(b.class(n)?)?;
    }
    r.check(
        "[11] built classes are S₄-invariant",
        invariant,
        format!("{} classes", names.len()),
    );
    let alt = Arc::new(FrobeniusAlgebra::new(MiddleLattice::k3_alternate())?);
    let three_alt = ThreeRing::new(alt)?;
    let three = pipeline::three_ring()?;
    let mut same = true;
    for m in [
        Monomial::new(0, 3, 0),
        Monomial::new(2, 2, 0),
        Monomial::new(4, 1, 0),
        Monomial::new(6, 0, 0),
    ] {
        same &= three_alt.product_value(m)? == three.product_value(m)?;
    }
    r.check(
        "[11] S^[3] numbers do not depend on the Gram matrix",
        same,
        "alternate unimodular lattice",
    );
    let mut squares = true;
    for n in -50i128..20_000 {
        let naive = (n >= 0)
            .then(|| (0..=n).find(|k| k * k >= n).filter(|k| k * k == n))
            .flatten();
        squares &= diophantine::exact_sqrt(n) == naive;
    }
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for _ in 0..10_000 {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let root = (state >> 4) as i128;
        let n = root * root;
        squares &= diophantine::exact_sqrt(n) == Some(root);
        squares &=
            diophantine::exact_sqrt(n + 1).is_none() && diophantine::exact_sqrt(n - 1).is_none();
    }
    r.check(
        "[11] perfect-square tester",
        squares,
        "against direct search",
    );
    Ok(())
}

/// Error unless every check in `report` passed.
pub fn require(report: &ReportDocument) -> Result<()> {
    match report.failures().next() {
        None => Ok(()),
        Some(c) => Err(Error::CheckFailed(format!("{}: {}", c.anchor, c.detail))),
    }
}
