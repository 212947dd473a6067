//! The `hk3` command line.
//!
//! Every subcommand builds a [`ReportDocument`] and prints it as text or,
//! with `--json`, as JSON. The exit status is 0 when every recorded check
//! passed, 1 when one failed and 2 on usage or computation errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::diophantine::{self, SieveOutcome};
use crate::invariants::{degree12_monomials, Monomial, DEG4_NAMES, DEG8_NAMES};
use crate::pipeline;
use crate::plane;
use crate::rational::{format_q, parse_q, qi, Q};
use crate::report::{ReportDocument, Value};
use crate::selfcheck::{self, Options, CRITERIA};
use crate::Result;

#[derive(Parser, Debug)]
#[command(
    name = "hk3",
    version,
    about = "Exact computations on Hilbert schemes of points on K3 surfaces"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Point table to verify instead of the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    pub points: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Product tables of H*(S^[n]) for n = 3 or 4.
    RingTables {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=4))]
        n: u8,
    },
    /// Fujiki constants of K3^[4] from Bott localization.
    Fujiki {
        #[arg(long, conflicts_with = "gamma")]
        raw: bool,
        #[arg(long)]
        gamma: bool,
    },
    /// The constants α(k, ℓ).
    AlphaConstants,
    /// The class of a Lagrangian 4-plane.
    PlaneClass {
        /// Value of (λ, λ); without it the class is given as a function of x.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        x: Option<Q>,
        /// Coefficient y; requires --x.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational, requires = "x")]
        y: Option<Q>,
    },
    /// Integral points on the quartic and its elliptic family.
    Diophantine {
        #[command(subcommand)]
        action: DiophantineAction,
    },
    /// Every consistency check.
    Selfcheck,
}

#[derive(Subcommand, Debug)]
pub enum DiophantineAction {
    /// Residue sieve over the admissible v.
    Sieve,
    /// Integral points of C₁ with |x₁| ≤ bound.
    Search {
        #[arg(long, default_value_t = pipeline::DEFAULT_SEARCH_BOUND)]
        bound: i64,
    },
    /// Verify the listed points on E_v and E'_v.
    VerifyPoints,
}

fn parse_rational(s: &str) -> std::result::Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            let _ = out.write_all(text.as_bytes());
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            2
        }
    }
}

pub fn execute(cli: &Cli) -> Result<ReportDocument> {
    let opts = Options {
        points: cli.points.as_deref(),
    };
    match &cli.command {
        Command::RingTables { n: 3 } => ring_tables_three(),
        Command::RingTables { .. } => ring_tables_four(&opts),
        Command::Fujiki { raw, gamma } => fujiki(*raw, *gamma, &opts),
        Command::AlphaConstants => alpha_constants(&opts),
        Command::PlaneClass { x: Some(x), y } => plane_at(x, y.as_ref().unwrap_or(&qi(0))),
        Command::PlaneClass { x: None, .. } => plane_symbolic(&opts),
        Command::Diophantine { action } => match action {
            DiophantineAction::Sieve => sieve(),
            DiophantineAction::Search { bound } => search(*bound),
            DiophantineAction::VerifyPoints => verify_points(&opts),
        },
        Command::Selfcheck => Ok(selfcheck::run_all(&opts).0),
    }
}

fn attach(report: &mut ReportDocument, numbers: &[u8], opts: &Options) {
    for c in CRITERIA.iter().filter(|c| numbers.contains(&c.number)) {
        selfcheck::run_criterion(c, report, opts);
    }
}

fn ring_tables_three() -> Result<ReportDocument> {
    let mut r = ReportDocument::new("ring-tables");
    r.input("n", "3");
    let three = pipeline::three_ring()?;
    r.result(
        "basis size",
        Value::Integer(three.basis().names().count() as i128),
    );
    for k in 0..=3u32 {
        for l in 0..=3 - k {
            let m = Monomial::new(2 * k, l, 3 - k - l);
            r.result(format!("∫{m}"), Value::rational(&three.product_value(m)?));
        }
    }
    r.note("c₂ = 4/3 θ and (δ, δ) = -4");
    for ((d, t, c), v) in [
        ((0, 3, 0), 15525),
        ((2, 2, 0), -2700),
        ((4, 1, 0), 1296),
        ((6, 0, 0), -960),
    ] {
        let m = Monomial::new(d, t, c);
        r.check_eq(format!("S^[3] {m}"), &three.product_value(m)?, &qi(v));
    }
    Ok(r)
}

fn ring_tables_four(opts: &Options) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("ring-tables");
    r.input("n", "4");
    let f = pipeline::four_ring()?;
    r.note(format!(
        "degree-4 basis {}; degree-8 basis {}",
        DEG4_NAMES.join(" "),
        DEG8_NAMES.join(" ")
    ));
    r.result("δ²", Value::vector(f.delta_squared()));
    r.result("θ", Value::vector(f.theta()));
    for i in 0..4 {
        for j in i..4 {
            r.result(
                format!("{}·{}", DEG4_NAMES[i], DEG4_NAMES[j]),
                Value::vector(&f.degree4_table()[i][j]),
            );
        }
    }
    r.result("Gram matrix on A…H", Value::matrix(f.gram_ah()));
    r.result("δ⁴", Value::vector(f.delta_fourth()));
    attach(&mut r, &[1], opts);
    Ok(r)
}

fn fujiki(raw: bool, gamma: bool, opts: &Options) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("fujiki");
    let t = pipeline::fujiki_table()?;
    let (show_raw, show_gamma) = if raw || gamma {
        (raw, gamma)
    } else {
        (true, true)
    };
    for (shape, e) in &t.entries {
        if show_raw {
            r.result(format!("∫{shape}"), Value::rational(&e.raw));
        }
        if show_gamma {
            r.result(format!("γ({})", shape.mu), Value::rational(&e.gamma));
        }
    }
    r.note(format!("{} localization equations", t.equations));
    attach(&mut r, &[5], opts);
    Ok(r)
}

fn alpha_constants(opts: &Options) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("alpha-constants");
    let a = pipeline::alpha_table()?;
    for ((k, l), v) in &a.values {
        r.result(format!("α({k},{l})"), Value::rational(v));
    }
    let s = pipeline::chern2()?;
    r.result("c₂ in W, X, Y, Z", Value::vector(&s.coords));
    let ad = pipeline::alpha_class()?;
    r.result("α in W, X, Y, Z", Value::vector(&ad.coords));
    let names = degree12_monomials();
    r.note(format!(
        "α is orthogonal to {} degree-12 monomials and δ⁶",
        names.len()
    ));
    r.result("α²θ², α²θc₂, α²c₂²", Value::vector(&ad.squares));
    attach(&mut r, &[3, 7], opts);
    Ok(r)
}

fn plane_at(x: &Q, y: &Q) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("plane-class");
    r.input("x", format_q(x)).input("y", format_q(y));
    let data = pipeline::intersection_data()?;
    let m = plane::m_lambda(data, x)?;
    r.result("M(λ)", Value::matrix(&m.matrix));
    let c = plane::solve_plane(data, x, y)?;
    r.result("[P⁴]", Value::vector(&c.coefficients));
    r.note(format!("basis {}", plane::BASIS.join(", ")));
    let lhs = m.matrix.mul_vec(&c.coefficients)?;
    r.check(
        "M(λ)·v equals the restriction pairings",
        lhs == plane::restriction_rhs(x, y),
        "exact",
    );
    r.check(
        "agrees with the closed form",
        c.coefficients == selfcheck::reference_plane_vector(x, y),
        "componentwise",
    );
    r.result(
        "[P⁴]²",
        Value::rational(&plane::self_intersection(data, x, y)?),
    );
    Ok(r)
}

fn plane_symbolic(opts: &Options) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("plane-class");
    let data = pipeline::intersection_data()?;
    let rel = pipeline::degree_eight_relation()?;
    r.result("degree-8 relation kernel", Value::vector(&rel.kernel));
    let sym = plane::symbolic_plane_class(data)?;
    for (i, name) in plane::BASIS.iter().enumerate() {
        let text = match sym.linear_y.get(i) {
            Some(l) if !l.is_zero() => {
                if sym.constant[i].is_zero() {
                    format!("({l}) y")
                } else {
                    format!("{} + ({l}) y", sym.constant[i])
                }
            }
            _ => sym.constant[i].to_string(),
        };
        r.result(format!("coefficient of {name}"), Value::Text(text));
    }
    let q = pipeline::quartic_relation()?;
    r.result(
        "quartic in x (y⁴ … y⁰ coefficients)",
        Value::vector(&q.coeffs),
    );
    let fc = plane::final_class(
        data,
        &diophantine::admissible_solutions(pipeline::default_search()?),
    )?;
    r.input(
        "(x, y)",
        format!("({}, {})", format_q(&fc.x), format_q(&fc.y)),
    );
    r.result("final class", Value::vector(&fc.coefficients));
    r.result("(ℓ, ℓ)", Value::rational(&fc.line_square));
    attach(&mut r, &[8, 9], opts);
    Ok(r)
}

fn sieve() -> Result<ReportDocument> {
    let mut r = ReportDocument::new("diophantine sieve");
    for (v, o) in diophantine::sieve_with_reasons() {
        let why = match o {
            SieveOutcome::Survives => "survives",
            SieveOutcome::DivisibleByThree => "eliminated: 3 | v",
            SieveOutcome::NoSolutionModSeven => "eliminated: no solution mod 7",
        };
        r.result(format!("v = {v}"), Value::Text(why.into()));
    }
    let s = diophantine::sieve();
    r.result(
        "survivors",
        Value::Integers(s.iter().map(|&v| v as i128).collect()),
    );
    let c1 = pipeline::c1_curve()?;
    r.check(
        "sieve agrees with brute force modulo 7³ and 3⁵",
        diophantine::sieve_oracle(c1) == s,
        "exact",
    );
    let finer = diophantine::local_survivors(c1);
    r.result(
        "survivors of the 3⁵ test applied to every v",
        Value::Integers(finer.iter().map(|&v| v as i128).collect()),
    );
    Ok(r)
}

fn search(bound: i64) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("diophantine search");
    r.input("bound", bound.to_string());
    let threads = diophantine::thread_count();
    r.input("threads", threads.to_string());
    let c1 = pipeline::c1_curve()?;
    r.result("C₁ coefficients", Value::Integers(c1.coeffs.to_vec()));
    let hits = diophantine::search_c1(c1, bound, threads)?;
    r.result(
        "points (x₁, y₁) with y₁ ≥ 0",
        Value::Text(format!("{hits:?}")),
    );
    for (x, y) in &hits {
        let u = Q::from_integer((*x).into());
        let q = diophantine::from_c1(&u, &Q::from_integer((*y).into()));
        r.note(format!(
            "x₁ = {x} maps to (x, y) = ({}, {})",
            format_q(&q.0),
            format_q(&q.1)
        ));
    }
    Ok(r)
}

fn verify_points(opts: &Options) -> Result<ReportDocument> {
    let mut r = ReportDocument::new("diophantine verify-points");
    if let Some(p) = opts.points {
        r.input("points", p.display().to_string());
    }
    let rep = diophantine::verify_points(&diophantine::load_points(opts.points)?)?;
    for p in &rep.points {
        let pm = if p.record.both_signs { "±" } else { "" };
        let mut detail = format!("residual {}", format_q(&p.residual));
        if let Some((x, y)) = &p.image {
            detail.push_str(&format!(", image ({}, {})", format_q(x), format_q(y)));
        }
        r.check(
            format!(
                "{} ({}, {pm}{}) {}",
                p.record.curve,
                format_q(&p.record.x),
                format_q(&p.record.y),
                p.record.kind
            ),
            p.on_curve(),
            detail,
        );
    }
    for t in &rep.transforms {
        r.check(
            format!("E'{} → E{}", t.model.v, t.model.v),
            t.holds,
            "change of variables",
        );
    }
    for (id, ok) in &rep.images_listed {
        r.check(format!("image of the {id} generator is listed"), *ok, "");
    }
    r.check(
        "no point has x = 175 v² u²",
        rep.none_of_required_form(),
        "",
    );
    Ok(r)
}
