//! End-to-end acceptance: one group per criterion, each compared against
//! literal reference values and against an oracle computed here by a
//! different route than the library uses.

use std::collections::BTreeSet;

use hilbert_k3::diophantine::{self, CurveId};
use hilbert_k3::fujiki::ChernMonomial;
use hilbert_k3::invariants::Monomial;
use hilbert_k3::linalg::RatMatrix;
use hilbert_k3::localization::{fixed_points, Surface, YTab};
use hilbert_k3::pipeline;
use hilbert_k3::plane;
use hilbert_k3::rational::{qi, qpow, qr, Q};
use hilbert_k3::selfcheck::{self, Options, CRITERIA};
use num_traits::Zero;

type Outcome = Result<(), String>;

macro_rules! expect {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: hilbert_k3::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The selfcheck group for `n` must pass too.
fn selfcheck_group(n: u8) -> Outcome {
    let c = CRITERIA.iter().find(|c| c.number == n).unwrap();
    let mut r = hilbert_k3::report::ReportDocument::new("acceptance");
    selfcheck::run_criterion(c, &mut r, &Options::default());
    let first = r
        .failures()
        .next()
        .map(|f| format!("{}: {}", f.anchor, f.detail));
    first.map_or(Ok(()), Err)
}

fn c1_ring_tables() -> Outcome {
    selfcheck_group(1)?;
    let f = ok(pipeline::four_ring())?;
    let e = |i: usize| -> [Q; 4] { std::array::from_fn(|j| qi((i == j) as i64)) };
    // The degree-8 table read through the Gram matrix must equal the
    // quadruple integral computed directly in the ring.
    for a in 0..4 {
        for b in a..4 {
            for c in 0..4 {
                for d in c..4 {
                    let via_table = f.pair8(&f.mul4(&e(a), &e(b)), &f.mul4(&e(c), &e(d)));
                    let direct = f.integrate4(&e(a), &e(b), &e(c), &e(d));
                    expect!(
                        via_table == direct,
                        "pairing of ({a}{b})·({c}{d}) disagrees"
                    );
                }
            }
        }
    }
    expect!(f.gram_ah().is_symmetric(), "Gram matrix not symmetric");
    expect!(f.gram_ah().rank() == 8, "Gram matrix degenerate");
    let d2 = f.delta_squared();
    expect!(&f.mul4(d2, d2) == f.delta_fourth(), "δ⁴ ≠ δ²·δ²");
    Ok(())
}

fn c2_quintuple() -> Outcome {
    selfcheck_group(2)?;
    let f = ok(pipeline::four_ring())?;
    let c2 = &ok(pipeline::chern2())?.coords;
    let (d2, th) = (f.delta_squared(), f.theta());
    let oracle = [
        f.integrate4(th, th, th, th),
        f.integrate4(d2, th, th, th),
        f.integrate4(d2, d2, th, th),
        f.integrate4(d2, d2, d2, th),
        f.integrate4(d2, d2, d2, d2),
    ];
    let lit = [450225, -117450, 84564, -93960, 136080];
    for (k, (o, l)) in oracle.iter().zip(lit).enumerate() {
        let m = Monomial::new(2 * k as u32, 4 - k as u32, 0);
        let v = ok(f.product_value(m, c2))?;
        expect!(&v == o && v == qi(l), "{m}: {v} vs oracle {o}, literal {l}");
    }
    Ok(())
}

fn c3_chern2() -> Outcome {
    selfcheck_group(3)?;
    let f = ok(pipeline::four_ring())?;
    let s = ok(pipeline::chern2())?;
    let t = ok(pipeline::fujiki_table())?;
    let (d2, th, c2) = (f.delta_squared(), f.theta(), &s.coords);
    let g = |parts: &[u32]| t.gamma(&ChernMonomial::from_parts(parts).unwrap()).unwrap();
    let q = qi(-6);
    // c₂ must reproduce every Fujiki pairing that only involves δ and c₂.
    expect!(
        f.integrate4(c2, d2, d2, d2) == qpow(&q, 3) * g(&[2]),
        "δ⁶c₂"
    );
    expect!(
        f.integrate4(c2, c2, d2, d2) == qpow(&q, 2) * g(&[2, 2]),
        "δ⁴c₂²"
    );
    expect!(f.integrate4(c2, c2, c2, d2) == &q * g(&[2, 2, 2]), "δ²c₂³");
    expect!(f.integrate4(c2, c2, c2, c2) == g(&[2, 2, 2, 2]), "c₂⁴");
    // α annihilates δ² against every degree-12 product.
    let a = &ok(pipeline::alpha_class())?.coords;
    for (x, y, z) in [
        (d2, d2, d2),
        (th, th, th),
        (c2, c2, c2),
        (d2, th, c2),
        (d2, d2, th),
        (d2, d2, c2),
    ] {
        expect!(f.integrate4(a, x, y, z).is_zero(), "α not orthogonal");
    }
    expect!(f.integrate4(a, a, th, th) == qi(9450), "α²θ²");
    Ok(())
}

/// `k`-tuples of Young diagrams of total size `n`, enumerated.
fn tuple_count(k: usize, n: usize) -> u64 {
    if k == 0 {
        return (n == 0) as u64;
    }
    (0..=n)
        .map(|m| YTab::all(m).len() as u64 * tuple_count(k - 1, n - m))
        .sum()
}

fn c4_localization() -> Outcome {
    selfcheck_group(4)?;
    for s in [Surface::P2, Surface::P1xP1] {
        let k = s.charts().len();
        for n in 1..=4 {
            let got = ok(fixed_points(s, n))?.len() as u64;
            expect!(got == tuple_count(k, n), "{} n={n}: {got}", s.name());
        }
    }
    let p: Vec<usize> = (0..=6).map(|n| YTab::all(n).len()).collect();
    expect!(p == vec![1, 1, 2, 3, 5, 7, 11], "partition numbers {p:?}");
    Ok(())
}

fn c5_fujiki() -> Outcome {
    selfcheck_group(5)?;
    let t = ok(pipeline::fujiki_table())?;
    // γ(∅) is the number of perfect matchings of 8 points.
    let matchings: i64 = (1..=7).step_by(2).product();
    expect!(
        ok(t.gamma(&ChernMonomial::empty()))? == qi(matchings),
        "γ(∅)"
    );
    for (shape, e) in &t.entries {
        let scale = qpow(&qi(-6), shape.k);
        expect!(e.raw == &e.gamma * &scale, "raw/γ mismatch at {shape}");
    }
    Ok(())
}

fn c6_cross() -> Outcome {
    selfcheck_group(6)?;
    let f = ok(pipeline::four_ring())?;
    let d8 = ok(f.delta8_direct())?;
    expect!(d8 == qi(105 * 1296), "δ⁸ = {d8}");
    Ok(())
}

fn c7_alpha() -> Outcome {
    selfcheck_group(7)?;
    let a = ok(pipeline::alpha_table())?;
    let f = ok(pipeline::four_ring())?;
    let c2 = &ok(pipeline::chern2())?.coords;
    let t = ok(pipeline::fujiki_table())?;
    for k in 0..=3u32 {
        for l in 1..=4 - k {
            let m = 4 - k - l;
            let raw = ok(f.product_value(Monomial::new(2 * k, l, m), c2))?;
            let g = ok(t.gamma(&ChernMonomial::c2_power(m as u8)))?;
            let oracle = raw / (qpow(&qi(-6), k) * g);
            expect!(ok(a.get(k, l))? == oracle, "α({k},{l})");
        }
    }
    let three = ok(pipeline::three_ring())?;
    // On S^[3]: c₂ = 4/3 θ, so ∫θ²c₂ = 4/3 ∫θ³.
    let t3 = ok(three.product_value(Monomial::new(0, 3, 0)))?;
    let t2c = ok(three.product_value(Monomial::new(0, 2, 1)))?;
    expect!(t2c == t3 * qr(4, 3), "θ²c₂ on S^[3]");
    Ok(())
}

fn c8_relation() -> Outcome {
    selfcheck_group(8)?;
    let rel = ok(pipeline::degree_eight_relation())?;
    let lit = |v: &[(i64, i64)]| v.iter().map(|&(p, q)| qr(p, q)).collect::<Vec<_>>();
    let alpha = lit(&[(1, 1), (23, 1), (575, 3), (1035, 1), (30015, 7)]);
    // Matrix rebuilt from α(0,ℓ)γ(μ) literals.
    let pair = |l: usize, mu: &[u32]| -> Q {
        let gm = match mu {
            [] => qi(105),
            [2] => qi(630),
            [2, 2] => qi(4932),
            [4] => qi(2016),
            [2, 2, 2] => qi(59640),
            [2, 4] => qi(24360),
            [2, 2, 2, 2] => qi(1992240),
            [2, 2, 4] => qi(813240),
            [4, 4] => qi(332730),
            _ => unreachable!(),
        };
        &alpha[l] * gm
    };
    let rows: [(usize, &[u32]); 4] = [(2, &[]), (1, &[2]), (0, &[2, 2]), (0, &[4])];
    let m = RatMatrix::from_fn(4, 4, |i, j| {
        let (li, mi) = rows[i];
        let (lj, mj) = rows[j];
        let mut mu: Vec<u32> = mi.iter().chain(mj).copied().collect();
        mu.sort();
        pair(li + lj, &mu)
    });
    expect!(
        m == rel.matrix,
        "relation matrix differs from the α·γ oracle"
    );
    let k = ok(m.mul_vec(&rel.kernel))?;
    expect!(k.iter().all(Zero::is_zero), "kernel vector not annihilated");
    expect!(m.rank() == 3, "rank");
    Ok(())
}

fn c9_plane() -> Outcome {
    selfcheck_group(9)?;
    let data = ok(pipeline::intersection_data())?;
    let q = ok(pipeline::quartic_relation())?;
    let d = qr(7, 2376);
    for i in 1..=12i64 {
        let x = qr(37 * i - 200, 3 + i % 5);
        let y = qr(i * i - 7, 11);
        let v = selfcheck::reference_plane_vector(&x, &y);
        let m = ok(plane::m_lambda(data, &x))?.matrix;
        let mv = ok(m.mul_vec(&v))?;
        expect!(
            mv == plane::restriction_rhs(&x, &y),
            "closed form fails M·v = r at x = {x}"
        );
        let sq: Q = v.iter().zip(&mv).map(|(a, b)| a * b).sum();
        expect!(
            sq - qi(5) == &d * (q.rhs(&x) - &y * &y),
            "quartic disagrees at ({x}, {y})"
        );
    }
    let fc = ok(plane::final_class(
        data,
        &diophantine::admissible_solutions(&[(0, 0)]),
    ))?;
    let v = selfcheck::reference_plane_vector(&qi(-126), &qi(0));
    // Rewritten in ρ = λ/3.
    let mut in_rho = v.clone();
    in_rho[0] *= qi(81);
    in_rho[1] *= qi(9);
    in_rho[2] *= qi(9);
    expect!(fc.coefficients == in_rho, "final class");
    let m = ok(plane::m_lambda(data, &qi(-126)))?.matrix;
    let sq: Q = v.iter().zip(&ok(m.mul_vec(&v))?).map(|(a, b)| a * b).sum();
    expect!(sq == qi(5), "[P⁴]² = {sq}");
    expect!(fc.line_square == qi(-126) / qi(36), "(ℓ, ℓ)");
    Ok(())
}

fn c10_diophantine() -> Outcome {
    selfcheck_group(10)?;
    let c1 = ok(pipeline::c1_curve())?;
    let hits = ok(pipeline::default_search())?;
    expect!(hits == &vec![(0, 0)], "search: {hits:?}");
    // Naive scan with floating-point root guesses, fixed up exactly.
    let mut naive = Vec::new();
    for x in -30_000i128..=30_000 {
        let f = c1.eval(x).unwrap();
        if f < 0 {
            continue;
        }
        let mut r = (f as f64).sqrt() as i128;
        while r * r > f {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= f {
            r += 1;
        }
        if r * r == f {
            naive.push((x, r));
        }
    }
    let small = ok(diophantine::search_c1(c1, 30_000, 2))?;
    expect!(naive == small, "naive {naive:?} vs {small:?}");
    let s = diophantine::sieve();
    let want: BTreeSet<i64> = [-1, -2, -11, -22, 7, 14, 77, 154].into();
    expect!(s == want, "sieve {s:?}");
    let recs = ok(diophantine::load_points(None))?;
    for r in &recs {
        if let CurveId::Ev(v) = r.curve {
            let e = ok(diophantine::EvCurve::new(v))?;
            let lhs = &r.y * &r.y;
            let (a2, a4, a6) = (
                Q::from(e.a2.clone()),
                Q::from(e.a4.clone()),
                Q::from(e.a6.clone()),
            );
            let rhs = &r.x * &r.x * &r.x + a2 * &r.x * &r.x + a4 * &r.x + a6;
            expect!(lhs == rhs, "{} ({}, {}) off the curve", r.curve, r.x, r.y);
        }
    }
    Ok(())
}

fn c11_properties() -> Outcome {
    selfcheck_group(11)?;
    // Independent of selfcheck: Δ followed by the counit on one side is
    // the identity on basis classes.
    let a = pipeline::algebra();
    for l in 0..hilbert_k3::frobenius::BASIS_LEN as hilbert_k3::frobenius::Label {
        let x = hilbert_k3::frobenius::K3Class::basis(l);
        let t = ok(a.comul_n(&x, 2))?;
        let mut back = hilbert_k3::frobenius::K3Class::zero();
        for (labels, k) in t.terms() {
            let e = a.counit(&hilbert_k3::frobenius::K3Class::basis(labels[1]));
            back = back.add(&hilbert_k3::frobenius::K3Class::basis(labels[0]).scale(&(k * e)));
        }
        expect!(back == x, "counit identity fails at {l}");
    }
    Ok(())
}

fn main() {
    let groups: [(u8, fn() -> Outcome); 11] = [
        (1, c1_ring_tables),
        (2, c2_quintuple),
        (3, c3_chern2),
        (4, c4_localization),
        (5, c5_fujiki),
        (6, c6_cross),
        (7, c7_alpha),
        (8, c8_relation),
        (9, c9_plane),
        (10, c10_diophantine),
        (11, c11_properties),
    ];
    let mut failed = Vec::new();
    for (n, f) in groups {
        match f() {
            Ok(()) => println!("criterion {n}: PASS"),
            Err(e) => {
                println!("criterion {n}: FAIL ({e})");
                failed.push(n);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
