//! Integral solutions of the quartic `y² = q(x)` arising from Lagrangian
//! 4-planes.
//!
//! Shifting `x₁ = x + 126` and scaling `y₁ = 4032 y` gives the integral quartic
//! `C₁: y₁² = x₁ · c(x₁)`. A nonzero integral point of `C₁` factors as
//! `x₁ = u²v`, `y₁ = uvw` with `v` squarefree dividing `462`, and lands on the
//! elliptic curve `E_v`. Local conditions at 3 and 7 cut the possible `v` down
//! to eight values. For those curves this module checks the listed points
//! and generators and scans `C₁` directly in a box.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::plane::QuarticRelation;
use crate::rational::{format_q, is_integer, parse_q, qb, qi, rational_sqrt, Q};
use crate::upoly::UPoly;
use crate::{ensure, Error, Result};

/// `x₁ = x + X_SHIFT`.
pub const X_SHIFT: i64 = 126;
/// `y₁ = Y_SCALE · y`, `2⁶·3²·7`.
pub const Y_SCALE: i64 = 4032;
/// `v` divides this.
pub const V_MODULUS: i64 = 2 * 3 * 7 * 11;
/// `x₂ = FORM_FACTOR · v² u²`, `5²·7`.
pub const FORM_FACTOR: i64 = 175;

/// Environment variable holding the worker count of parallel scans.
pub const THREADS_ENV: &str = "HK3_THREADS";

/// Worker count from [`THREADS_ENV`]; serial when unset or invalid.
pub fn thread_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(1)
}

/// `y² = Σ coeffs[i] x^{4-i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticCurve {
    pub coeffs: [Q; 5],
}

impl QuarticCurve {
    pub fn from_relation(r: &QuarticRelation) -> Self {
        QuarticCurve {
            coeffs: r.coeffs.clone(),
        }
    }

    pub fn poly(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn residual(&self, x: &Q, y: &Q) -> Q {
        y * y - self.poly().eval(x)
    }
}

/// `p(a t + b)`.
pub fn compose_linear(p: &UPoly, a: &Q, b: &Q) -> UPoly {
    let lin = UPoly::new(vec![b.clone(), a.clone()]);
    let mut acc = UPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &lin) + &UPoly::constant(c.clone());
    }
    acc
}

pub fn to_c1(x: &Q, y: &Q) -> (Q, Q) {
    (x + qi(X_SHIFT), y * qi(Y_SCALE))
}

pub fn from_c1(x1: &Q, y1: &Q) -> (Q, Q) {
    (x1 - qi(X_SHIFT), y1 / qi(Y_SCALE))
}

/// `y₁² = Σ coeffs[i] x₁^{4-i}` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Curve {
    pub coeffs: [i128; 5],
}

impl C1Curve {
    /// Transforms the quartic; the result must be integral with no constant term.
    pub fn from_quartic(q: &QuarticCurve) -> Result<Self> {
        let p = compose_linear(&q.poly(), &qi(1), &qi(-X_SHIFT)).scale(&qi(Y_SCALE * Y_SCALE));
        let mut coeffs = [0i128; 5];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let v = p.coeff(4 - i);
            ensure(is_integer(&v), || {
                format!("C₁ coefficient {} is not integral", format_q(&v))
            })?;
            *c = i128::try_from(v.numer())
                .map_err(|_| Error::Overflow("C₁ coefficient exceeds i128".into()))?;
        }
        ensure(coeffs[4] == 0, || "C₁ has a constant term".into())?;
        Ok(C1Curve { coeffs })
    }

    pub fn poly(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .rev()
                .map(|&c| Q::from(BigInt::from(c)))
                .collect(),
        )
    }

    /// Right-hand side at an integer, `None` on overflow.
    pub fn eval(&self, x: i128) -> Option<i128> {
        self.coeffs
            .iter()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }

    /// Cubic `c` with `C₁ = x₁ c(x₁)`.
    pub fn cubic(&self) -> UPoly {
        UPoly::new(
            self.coeffs[..4]
                .iter()
                .rev()
                .map(|&c| Q::from(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn contains(&self, x1: &Q, y1: &Q) -> bool {
        y1 * y1 == self.poly().eval(x1)
    }

    /// Nonzero rational roots of the right-hand side.
    pub fn nonzero_rational_roots(&self) -> Vec<Q> {
        self.cubic()
            .rational_roots()
            .into_iter()
            .filter(|r| !r.is_zero())
            .collect()
    }
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    // squares mod 64 occupy 12 residues
    const SQ64: u64 = 0x0202_0212_0203_0213;
    if (SQ64 >> (n & 63)) & 1 == 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Integral points `(x₁, y₁)` with `|x₁| ≤ bound` and `y₁ ≥ 0`, by `x₁`.
pub fn search_c1(c: &C1Curve, bound: i64, threads: usize) -> Result<Vec<(i128, i128)>> {
    ensure(bound >= 1, || "search bound must be at least 1".into())?;
    let bound = bound as i128;
    const CHUNK: i128 = 1 << 14;
    let starts: Vec<i128> = (0..)
        .map(|i| -bound + i * CHUNK)
        .take_while(|&s| s <= bound)
        .collect();
    let scan = |start: &i128| -> Result<Vec<(i128, i128)>> {
        let mut hits = Vec::new();
        for x in *start..=(start + CHUNK - 1).min(bound) {
            let v = c
                .eval(x)
                .ok_or_else(|| Error::Overflow(format!("C₁ overflows i128 at x₁ = {x}")))?;
            if let Some(r) = exact_sqrt(v) {
                hits.push((x, r));
            }
        }
        Ok(hits)
    };
    let chunks: Vec<Vec<(i128, i128)>> = if threads <= 1 {
        starts.iter().map(scan).collect::<Result<_>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| starts.par_iter().map(scan).collect::<Result<_>>())?
    };
    Ok(chunks.into_iter().flatten().collect())
}

/// Admissible `(x, y)` on the quartic from scan hits, both signs of `y`.
pub fn admissible_solutions(hits: &[(i128, i128)]) -> Vec<(Q, Q)> {
    let mut out = Vec::new();
    for &(x1, y1) in hits {
        let (x, y) = from_c1(&Q::from(BigInt::from(x1)), &Q::from(BigInt::from(y1)));
        if !y.is_zero() {
            out.push((x.clone(), -y.clone()));
        }
        out.push((x, y));
    }
    out
}

/// `x₁ = u² v` with `u > 0` and `v` squarefree carrying the sign.
pub fn squarefree_split(x1: i128) -> Result<(i128, i128)> {
    if x1 == 0 {
        return Err(Error::Domain("cannot split zero".into()));
    }
    let mut rest = x1.abs();
    let (mut u, mut v) = (1i128, x1.signum());
    let mut p = 2i128;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        u *= p.pow(e / 2);
        if e % 2 == 1 {
            v *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Ok((u, v * rest))
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// The 32 signed divisors of [`V_MODULUS`].
pub fn admissible_v() -> Vec<i64> {
    let mut out: Vec<i64> = (1..=V_MODULUS)
        .filter(|d| V_MODULUS % d == 0)
        .flat_map(|d| [-d, d])
        .collect();
    out.sort_unstable();
    out
}

/// `E_v: y² = x³ + a₂x² + a₄x + a₆`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvCurve {
    pub v: i64,
    pub a2: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

fn factored(factors: &[(i64, u32)]) -> BigInt {
    factors
        .iter()
        .fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
}

impl EvCurve {
    pub fn new(v: i64) -> Result<Self> {
        if !is_squarefree(v) || V_MODULUS % v != 0 {
            return Err(Error::Domain(format!(
                "v = {v} is not a squarefree divisor of {V_MODULUS}"
            )));
        }
        let vb = BigInt::from(v);
        Ok(EvCurve {
            v,
            a2: -factored(&[(2, 6), (5, 2), (7, 2)]) * &vb,
            a4: factored(&[(2, 7), (3, 2), (5, 2), (7, 2), (23, 1), (71, 1)]) * vb.pow(2),
            a6: -factored(&[(2, 11), (3, 4), (5, 4), (7, 4), (11, 2)]) * vb.pow(3),
        })
    }

    pub fn poly(&self) -> UPoly {
        UPoly::new(vec![
            qb(self.a6.clone()),
            qb(self.a4.clone()),
            qb(self.a2.clone()),
            qi(1),
        ])
    }

    pub fn residual(&self, x: &Q, y: &Q) -> Q {
        y * y - self.poly().eval(x)
    }

    /// `x = 175 v² u²` with `u ≠ 0` an integer.
    pub fn has_required_form(&self, x: &Q) -> bool {
        if !is_integer(x) || !x.is_positive() {
            return false;
        }
        let base = BigInt::from(FORM_FACTOR) * BigInt::from(self.v).pow(2);
        let (q, r) = x.numer().div_rem(&base);
        r.is_zero() && q.sqrt().pow(2) == q
    }
}

/// `(x₂, y₂) = (175 v² u², 175 v² w)`.
pub fn to_ev(u: &Q, v: i64, w: &Q) -> Result<(Q, Q)> {
    let curve = EvCurve::new(v)?;
    let k = qi(FORM_FACTOR) * qi(curve.v) * qi(curve.v);
    Ok((&k * u * u, &k * w))
}

/// `E_v` pulled back along `x₂ = 175 v² t`, compared with
/// `5⁴·7²·v³ · c(v t)` where `C₁ = x₁ c(x₁)`.
pub fn ev_identity_holds(c1: &C1Curve, v: i64) -> Result<bool> {
    let e = EvCurve::new(v)?;
    let k = qi(FORM_FACTOR) * qi(v) * qi(v);
    let lhs = compose_linear(&e.poly(), &k, &qi(0));
    let scale = qi(625 * 49) * qi(v) * qi(v) * qi(v);
    let rhs = compose_linear(&c1.cubic(), &qi(v), &qi(0)).scale(&scale);
    Ok(lhs == rhs)
}

/// Why a `v` was dropped by the sieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SieveOutcome {
    Survives,
    DivisibleByThree,
    NoSolutionModSeven,
}

/// Residue-class sieve over the 32 admissible `v`.
pub fn sieve_with_reasons() -> Vec<(i64, SieveOutcome)> {
    let squares: BTreeSet<i64> = (0..7).map(|a| a * a % 7).collect();
    admissible_v()
        .into_iter()
        .map(|v| {
            let outcome = if v % 3 == 0 {
                SieveOutcome::DivisibleByThree
            } else {
                // v w₁² ≡ 3 when 7 ∤ v, u² v₁ ≡ 4 when v = 7 v₁
                let (coef, target) = if v % 7 != 0 { (v, 3) } else { (v / 7, 4) };
                if squares
                    .iter()
                    .any(|s| (coef * s - target).rem_euclid(7) == 0)
                {
                    SieveOutcome::Survives
                } else {
                    SieveOutcome::NoSolutionModSeven
                }
            };
            (v, outcome)
        })
        .collect()
}

pub fn sieve() -> BTreeSet<i64> {
    sieve_with_reasons()
        .into_iter()
        .filter(|(_, o)| *o == SieveOutcome::Survives)
        .map(|(v, _)| v)
        .collect()
}

/// `v w² = Σ_k c_k u^{2k} v^k` after dividing `C₁` by `x₁ = u² v`.
fn local_solvable(c1: &C1Curve, v: i64, modulus: i64) -> bool {
    let m = modulus as i128;
    let v = v as i128;
    let c: Vec<i128> = c1.coeffs[..4].iter().map(|&k| k.rem_euclid(m)).collect();
    let lhs: BTreeSet<i128> = (0..m).map(|w| (v * w % m * w).rem_euclid(m)).collect();
    (0..m).any(|u| {
        let t = (u * u % m * v).rem_euclid(m);
        let rhs = c.iter().fold(0i128, |acc, &k| (acc * t + k).rem_euclid(m));
        lhs.contains(&rhs)
    })
}

/// Brute-force survivors within the sieve's scope: solutions modulo `7³`,
/// and modulo `3⁵` when `3 | v`.
pub fn sieve_oracle(c1: &C1Curve) -> BTreeSet<i64> {
    admissible_v()
        .into_iter()
        .filter(|&v| local_solvable(c1, v, 343) && (v % 3 != 0 || local_solvable(c1, v, 243)))
        .collect()
}

/// `v` with solutions modulo both `7³` and `3⁵`, a finer local test.
pub fn local_survivors(c1: &C1Curve) -> BTreeSet<i64> {
    admissible_v()
        .into_iter()
        .filter(|&v| local_solvable(c1, v, 343) && local_solvable(c1, v, 243))
        .collect()
}

/// Which curve a record lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveId {
    Ev(i64),
    /// Minimal model of `E_v`.
    Minimal(i64),
}

impl FromStr for CurveId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown curve id {s:?}"));
        let (minimal, rest) = match s.strip_prefix("E'") {
            Some(r) => (true, r),
            None => (false, s.strip_prefix('E').ok_or_else(bad)?),
        };
        let v: i64 = rest.parse().map_err(|_| bad())?;
        Ok(if minimal {
            CurveId::Minimal(v)
        } else {
            CurveId::Ev(v)
        })
    }
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveId::Ev(v) => write!(f, "E{v}"),
            CurveId::Minimal(v) => write!(f, "E'{v}"),
        }
    }
}

/// `y² = x³ + a₂x² + a₄x + a₆` reached from `E_v` by `x = s² x' + r`, `y = s³ y'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModel {
    pub v: i64,
    pub a2: i64,
    pub a4: i64,
    pub a6: i64,
    pub s: i64,
    pub r: i64,
}

pub const MINIMAL_MODELS: [MinimalModel; 2] = [
    MinimalModel {
        v: -11,
        a2: -1,
        a4: 1933249267,
        a6: 116312127942837,
        s: 2,
        r: -287468,
    },
    MinimalModel {
        v: -22,
        a2: 1,
        a4: 483312317,
        a6: 14539257649013,
        s: 4,
        r: -574928,
    },
];

impl MinimalModel {
    pub fn for_v(v: i64) -> Result<&'static MinimalModel> {
        MINIMAL_MODELS
            .iter()
            .find(|m| m.v == v)
            .ok_or_else(|| Error::InvalidArgument(format!("no minimal model stored for E{v}")))
    }

    pub fn poly(&self) -> UPoly {
        UPoly::from_ints(&[self.a6, self.a4, self.a2, 1])
    }

    pub fn residual(&self, x: &Q, y: &Q) -> Q {
        y * y - self.poly().eval(x)
    }

    pub fn to_ev(&self, x: &Q, y: &Q) -> (Q, Q) {
        let s = qi(self.s);
        (&s * &s * x + qi(self.r), &s * &s * &s * y)
    }

    /// `f_v(s² x + r) = s⁶ g(x)`.
    pub fn transform_holds(&self) -> Result<bool> {
        let e = EvCurve::new(self.v)?;
        let s2 = qi(self.s * self.s);
        let lhs = compose_linear(&e.poly(), &s2, &qi(self.r));
        Ok(lhs == self.poly().scale(&(&s2 * &s2 * &s2)))
    }
}

/// One listed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvePointRecord {
    pub curve: CurveId,
    pub x: Q,
    pub y: Q,
    /// The record stands for `(x, ±y)`.
    pub both_signs: bool,
    pub kind: String,
    pub line: usize,
}

/// Bundled point table.
pub const BUNDLED_POINTS: &str = include_str!("../data/curve_points.txt");

pub fn parse_points(text: &str) -> Result<Vec<CurvePointRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [curve, x, y, kind] = fields.as_slice() else {
            return Err(Error::Parse(format!(
                "line {}: expected 4 fields, got {}",
                i + 1,
                fields.len()
            )));
        };
        let (both_signs, y) = match y.strip_prefix('±') {
            Some(rest) => (true, rest),
            None => (false, *y),
        };
        out.push(CurvePointRecord {
            curve: curve.parse()?,
            x: parse_q(x)?,
            y: parse_q(y)?,
            both_signs,
            kind: kind.to_string(),
            line: i + 1,
        });
    }
    Ok(out)
}

pub fn load_points(path: Option<&Path>) -> Result<Vec<CurvePointRecord>> {
    match path {
        Some(p) => parse_points(&std::fs::read_to_string(p)?),
        None => parse_points(BUNDLED_POINTS),
    }
}

/// Verification of one record.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCheck {
    pub record: CurvePointRecord,
    pub residual: Q,
    /// `y` recomputed as the square root of the right-hand side.
    pub recomputed_y: Option<Q>,
    /// Image on `E_v`, for minimal-model records.
    pub image: Option<(Q, Q)>,
    pub required_form: bool,
}

impl PointCheck {
    pub fn on_curve(&self) -> bool {
        self.residual.is_zero()
            && self
                .recomputed_y
                .as_ref()
                .is_none_or(|r| r == &self.record.y.abs())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformCheck {
    pub model: MinimalModel,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointReport {
    pub points: Vec<PointCheck>,
    pub transforms: Vec<TransformCheck>,
    /// Images of minimal-model generators that match a listed point of `E_v`.
    pub images_listed: Vec<(CurveId, bool)>,
}

impl PointReport {
    pub fn all_on_curve(&self) -> bool {
        self.points.iter().all(PointCheck::on_curve)
    }

    pub fn none_of_required_form(&self) -> bool {
        self.points.iter().all(|p| !p.required_form)
    }

    pub fn transforms_hold(&self) -> bool {
        self.transforms.iter().all(|t| t.holds)
    }

    pub fn passed(&self) -> bool {
        self.all_on_curve()
            && self.none_of_required_form()
            && self.transforms_hold()
            && self.images_listed.iter().all(|(_, ok)| *ok)
    }
}

pub fn verify_points(records: &[CurvePointRecord]) -> Result<PointReport> {
    let mut points = Vec::new();
    let mut images_listed = Vec::new();
    for rec in records {
        let check = match rec.curve {
            CurveId::Ev(v) => {
                let e = EvCurve::new(v)?;
                let rhs = e.poly().eval(&rec.x);
                PointCheck {
                    record: rec.clone(),
                    residual: e.residual(&rec.x, &rec.y),
                    recomputed_y: rec.both_signs.then(|| rational_sqrt(&rhs)).flatten(),
                    image: None,
                    required_form: e.has_required_form(&rec.x),
                }
            }
            CurveId::Minimal(v) => {
                let m = MinimalModel::for_v(v)?;
                let e = EvCurve::new(v)?;
                let (x, y) = m.to_ev(&rec.x, &rec.y);
                let listed = records.iter().any(|r| {
                    r.curve == CurveId::Ev(v)
                        && r.x == x
                        && (r.y == y || (r.both_signs && r.y == -y.clone()))
                });
                images_listed.push((rec.curve, listed));
                PointCheck {
                    record: rec.clone(),
                    residual: m.residual(&rec.x, &rec.y),
                    recomputed_y: None,
                    required_form: e.has_required_form(&x),
                    image: Some((x, y)),
                }
            }
        };
        points.push(check);
    }
    let transforms = MINIMAL_MODELS
        .iter()
        .map(|m| {
            Ok(TransformCheck {
                model: m.clone(),
                holds: m.transform_holds()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(PointReport {
        points,
        transforms,
        images_listed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c1_expected() -> C1Curve {
        C1Curve {
            coeffs: [
                25 * 7,
                -(64 * 25 * 49),
                128 * 9 * 7 * 23 * 71,
                -(2048 * 81 * 49 * 121),
                0,
            ],
        }
    }

    fn quartic() -> QuarticCurve {
        QuarticCurve {
            coeffs: [
                Q::new(25.into(), (4096 * 81 * 7).into()),
                Q::new(25.into(), (512 * 81).into()),
                Q::new((13 * 31).into(), (512 * 9 * 7).into()),
                Q::new(9.into(), 128.into()),
                Q::new((-9 * 5 * 49 * 197).into(), 256.into()),
            ],
        }
    }

    #[test]
    fn c1_from_quartic() {
        let c = C1Curve::from_quartic(&quartic()).unwrap();
        assert_eq!(c, c1_expected());
        assert_eq!(to_c1(&qi(-126), &qi(0)), (qi(0), qi(0)));
        assert!(c.nonzero_rational_roots().is_empty());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_split(12).unwrap(), (2, 3));
        assert_eq!(squarefree_split(-50).unwrap(), (5, -2));
        assert_eq!(squarefree_split(1).unwrap(), (1, 1));
        assert!(squarefree_split(0).is_err());
    }

    #[test]
    fn sieve_survivors() {
        let s = sieve();
        assert_eq!(s, [-22, -11, -2, -1, 7, 14, 77, 154].into_iter().collect());
        let reasons = sieve_with_reasons();
        assert!(reasons.contains(&(3, SieveOutcome::DivisibleByThree)));
        assert!(reasons.contains(&(1, SieveOutcome::NoSolutionModSeven)));
        assert_eq!(admissible_v().len(), 32);
        assert_eq!(sieve_oracle(&c1_expected()), s);
        let finer = local_survivors(&c1_expected());
        assert!(finer.is_subset(&s));
        assert_eq!(finer, [-11, -2, 7, 154].into_iter().collect());
    }

    #[test]
    fn ev_curves() {
        assert!(EvCurve::new(5).is_err());
        assert!(EvCurve::new(4).is_err());
        for v in admissible_v() {
            assert!(ev_identity_holds(&c1_expected(), v).unwrap(), "v = {v}");
        }
        let e = EvCurve::new(14).unwrap();
        assert!(e.residual(&qi(564480), &qi(49392000)).is_zero());
        assert!(!e.has_required_form(&qi(564480)));
        assert!(e.has_required_form(&qi(175 * 196 * 9)));
    }

    #[test]
    fn small_search() {
        let c = c1_expected();
        assert_eq!(search_c1(&c, 1, 1).unwrap(), vec![(0, 0)]);
        assert_eq!(
            search_c1(&c, 1000, 1).unwrap(),
            search_c1(&c, 1000, 3).unwrap()
        );
        assert_eq!(admissible_solutions(&[(0, 0)]), vec![(qi(-126), qi(0))]);
    }

    #[test]
    fn bundled_points() {
        let recs = load_points(None).unwrap();
        assert_eq!(
            recs.iter()
                .filter(|r| r.curve == CurveId::Ev(14) && r.kind == "integral")
                .count(),
            17
        );
        let report = verify_points(&recs).unwrap();
        assert!(report.all_on_curve());
        assert!(report.none_of_required_form());
        assert!(report.transforms_hold());
        assert!(report.passed());
        let mut bad = recs.clone();
        bad[0].x += qi(1);
        assert!(!verify_points(&bad).unwrap().all_on_curve());
        assert!(parse_points("E7 1 2").is_err());
        assert!(parse_points("F7 1 2 g").is_err());
    }

    fn isqrt_oracle(n: i128) -> Option<i128> {
        if n < 0 {
            return None;
        }
        let (mut lo, mut hi) = (0i128, 1i128 << 63);
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if mid.checked_mul(mid).is_some_and(|m| m <= n) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        (lo * lo == n).then_some(lo)
    }

    proptest! {
        #[test]
        fn exact_sqrt_matches_oracle(r in 0i128..(1i128 << 60), d in -3i128..=3, neg in any::<bool>()) {
            let n = if neg { -(r * r + d).abs() - 1 } else { r * r + d };
            prop_assert_eq!(exact_sqrt(n), isqrt_oracle(n));
        }

        #[test]
        fn squarefree_round_trip(x in -10_000_000i128..10_000_000) {
            prop_assume!(x != 0);
            let (u, v) = squarefree_split(x).unwrap();
            prop_assert!(u > 0);
            prop_assert_eq!(u * u * v, x);
            prop_assert!(is_squarefree(v as i64));
        }

        #[test]
        fn c1_transform_identity(n in -1000i64..1000, d in 1i64..50) {
            let x = Q::new(n.into(), d.into());
            let q = quartic();
            let c = c1_expected();
            let (x1, _) = to_c1(&x, &qi(0));
            let lhs = c.poly().eval(&x1);
            let rhs = q.poly().eval(&x) * qi(Y_SCALE * Y_SCALE);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn to_ev_lands_on_curve(ui in 1i64..40, vi in 0usize..32, t in -20i64..20) {
            // pick w with v w² = c(u² v) by choosing a rational u on a scaled curve
            let v = admissible_v()[vi];
            let c = c1_expected();
            let u = Q::new(ui.into(), (t.abs() + 1).into());
            let x1 = &u * &u * qi(v);
            let rhs = c.poly().eval(&x1);
            // w² = rhs / (u² v²); on E_v the residual is w-independent
            let w2 = rhs / (&u * &u * qi(v) * qi(v));
            let (x2, _) = to_ev(&u, v, &qi(0)).unwrap();
            let e = EvCurve::new(v).unwrap();
            let k = qi(FORM_FACTOR) * qi(v) * qi(v);
            prop_assert_eq!(e.poly().eval(&x2), &k * &k * w2);
        }
    }
}
