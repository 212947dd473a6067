//! Universal series `A(z)`, `B(z)`, the Fujiki constants of `K3^[4]`-type
//! manifolds and the generalized constants `α(k, ℓ)`.
//!
//! For a surface `S`,
//! `Σ_n z^n ∫_{S^[n]} exp(c₁(O^[n])) Φ(S^[n]) = A(z)^{c₁²} B(z)^{c₂}`,
//! where `Φ` is the universal multiplicative genus with coefficients
//! `a_1, a_2, …`. Localization on `P²` and `P¹×P¹` determines `A` and `B`.
//! For a K3 surface the series is `B²⁴`, and its `z⁴` coefficient encodes
//! every integral `∫ δ^{2k} c_μ` over `S^[4]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::invariants::{Chern2Inputs, Coords4, FourRing, Monomial, ThreeRing};
use crate::linalg::RatMatrix;
use crate::localization::{genus_bott_series, Surface, ZSign};
#[cfg(test)]
use crate::rational::qr;
use crate::rational::{factorial, format_q, qi, qpow, Q};
use crate::series::{a_weight, AMonomial, APoly, Coeff, TruncSeries};
use crate::{ensure, Error, Result};

/// Highest complex degree tracked.
pub const MAX_DEGREE: u32 = 8;

/// Even Chern monomial `c₂^{e₀} c₄^{e₁} c₆^{e₂} c₈^{e₃}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ChernMonomial(pub [u8; 4]);

impl ChernMonomial {
    pub fn empty() -> Self {
        ChernMonomial([0; 4])
    }

    /// From even part sizes, e.g. `[2, 2, 4]`.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let mut e = [0u8; 4];
        for &p in parts {
            if p == 0 || p % 2 != 0 || p > MAX_DEGREE {
                return Err(Error::InvalidArgument(format!(
                    "{p} is not an even part ≤ 8"
                )));
            }
            e[(p / 2 - 1) as usize] += 1;
        }
        Ok(ChernMonomial(e))
    }

    /// `c₂^m`.
    pub fn c2_power(m: u8) -> Self {
        ChernMonomial([m, 0, 0, 0])
    }

    pub fn degree(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| 2 * (i as u32 + 1) * e as u32)
            .sum()
    }

    /// Even monomials of exactly the given degree, largest parts last.
    pub fn of_degree(d: u32) -> Vec<ChernMonomial> {
        let mut out = Vec::new();
        fn rec(left: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<ChernMonomial>) {
            if left == 0 {
                out.push(ChernMonomial::from_parts(cur).expect("even parts"));
                return;
            }
            let mut p = 2;
            while p <= left.min(max_part) {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
                p += 2;
            }
        }
        if d.is_multiple_of(2) {
            rec(d, d.max(2), &mut Vec::new(), &mut out);
        }
        out.sort_by_key(|m| std::cmp::Reverse(m.0[0]));
        out
    }

    fn mul(&self, o: &ChernMonomial) -> ChernMonomial {
        ChernMonomial(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl fmt::Display for ChernMonomial {
    /// Exponential notation, `2^2 4^1`; `∅` for the empty monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, e)| format!("{}^{e}", 2 * (i + 1)))
            .collect();
        if parts.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Polynomial in even Chern classes, truncated above complex degree 8.
#[derive(Clone, Debug, PartialEq, Default)]
struct ChernPoly<C: Coeff> {
    terms: BTreeMap<ChernMonomial, C>,
}

impl<C: Coeff> ChernPoly<C> {
    fn zero() -> Self {
        ChernPoly {
            terms: BTreeMap::new(),
        }
    }

    fn term(m: ChernMonomial, c: C) -> Self {
        let mut p = ChernPoly::zero();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: ChernMonomial, c: C) {
        if m.degree() > MAX_DEGREE || c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(C::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = ChernPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    fn scale_by(&self, k: &C) -> Self {
        let mut out = ChernPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.mul(k));
        }
        out
    }
}

/// Power sums `p_1..p_8` of the Chern roots in terms of even Chern classes.
fn power_sums() -> Vec<ChernPoly<Q>> {
    let c = |k: usize| -> ChernPoly<Q> {
        if k.is_multiple_of(2) && (2..=8).contains(&k) {
            let mut e = [0u8; 4];
            e[k / 2 - 1] = 1;
            ChernPoly::term(ChernMonomial(e), qi(1))
        } else {
            ChernPoly::zero()
        }
    };
    let mut p: Vec<ChernPoly<Q>> = vec![ChernPoly::zero()];
    for m in 1..=MAX_DEGREE as usize {
        let sign = |i: usize| if i % 2 == 1 { qi(1) } else { qi(-1) };
        let mut pm = c(m).scale_by(&(sign(m) * qi(m as i64)));
        for i in 1..m {
            pm = pm.add(&c(i).mul(&p[m - i]).scale_by(&sign(i)));
        }
        p.push(pm);
    }
    p
}

/// Coefficients of `Φ(X)` on even Chern monomials of degree ≤ 8.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusExpansion {
    coeffs: BTreeMap<ChernMonomial, APoly>,
}

impl GenusExpansion {
    /// `log Φ(x) = Σ q_m x^m`, so `log Φ(X) = Σ q_m p_m`; exponentiate.
    pub fn compute() -> Result<Self> {
        let order = MAX_DEGREE as usize;
        let mut phi = vec![APoly::constant(qi(1))];
        phi.extend((1..=order).map(APoly::var));
        let log = TruncSeries::new(phi, order).log()?;
        let p = power_sums();
        let mut x: ChernPoly<APoly> = ChernPoly::zero();
        for m in 1..=order {
            for (mono, k) in &p[m].terms {
                x.add_term(*mono, log.coeff(m).scale(k));
            }
        }
        let mut result = ChernPoly::term(ChernMonomial::empty(), APoly::constant(qi(1)));
        let mut power = result.clone();
        for k in 1..=(MAX_DEGREE / 2) as i64 {
            power = power
                .mul(&x)
                .scale_by(&APoly::constant(Q::new(1.into(), k.into())));
            result = result.add(&power);
        }
        Ok(GenusExpansion {
            coeffs: result.terms,
        })
    }

    pub fn coefficient(&self, m: &ChernMonomial) -> APoly {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn monomials(&self) -> impl Iterator<Item = (&ChernMonomial, &APoly)> {
        self.coeffs.iter()
    }
}

/// Closed forms of the `z¹`, `z²` coefficients of `A` and `B`.
pub const A_ANCHORS: [&str; 2] = [
    "a2",
    "-a1^3 + 3*a1^2*a2 + 1/4*a1^2 + a1*a2 - 9/2*a2^2 + a1*a3 + 1/6*a1 - 3/2*a2 + 3*a3 - 10*a4 - 1/48",
];
pub const B_ANCHORS: [&str; 2] = [
    "a1^2 - 2*a2",
    "2*a1^4 - 8*a1^2*a2 - 5/4*a1^2 + 31/2*a2^2 - 15*a1*a3 + 5/2*a2 + 15*a4 + 1/48",
];

/// `A(z)`, `B(z)` with the sign of `c₁(O^[n])` that reproduces the anchors.
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalSeries {
    pub a: TruncSeries<APoly>,
    pub b: TruncSeries<APoly>,
    pub sign: ZSign,
    /// Signs tried that failed the anchors.
    pub rejected: Vec<ZSign>,
}

/// `A`, `B` from `F_{P²} = A⁹B³` and `F_{P¹×P¹} = A⁸B⁴`.
pub fn extract_ab_with(
    sign: ZSign,
    order: usize,
) -> Result<(TruncSeries<APoly>, TruncSeries<APoly>)> {
    let lp2 = genus_bott_series(Surface::P2, order, sign)?.log()?;
    let lpp = genus_bott_series(Surface::P1xP1, order, sign)?.log()?;
    let twelfth = Q::new(1.into(), 12.into());
    let log_a = lp2.scale(&qi(4)).add(&lpp.scale(&qi(-3)))?.scale(&twelfth);
    let log_b = lpp.scale(&qi(9)).add(&lp2.scale(&qi(-8)))?.scale(&twelfth);
    Ok((log_a.exp()?, log_b.exp()?))
}

fn matches_anchors(a: &TruncSeries<APoly>, b: &TruncSeries<APoly>) -> Result<bool> {
    for k in 0..2 {
        if a.coeff(k + 1) != &APoly::parse(A_ANCHORS[k])?
            || b.coeff(k + 1) != &APoly::parse(B_ANCHORS[k])?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Computes `A`, `B` through `z^order`, choosing the sign of the `z`-form by
/// the anchors.
pub fn extract_ab(order: usize) -> Result<UniversalSeries> {
    let mut rejected = Vec::new();
    let mut found = None;
    for sign in [ZSign::Plus, ZSign::Minus] {
        let (a, b) = extract_ab_with(sign, order)?;
        if matches_anchors(&a, &b)? {
            if found.is_some() {
                return Err(Error::CheckFailed("both signs match the anchors".into()));
            }
            found = Some((a, b, sign));
        } else {
            rejected.push(sign);
        }
    }
    let (a, b, sign) = found.ok_or_else(|| {
        Error::CheckFailed("no sign of c₁(O^[n]) reproduces the A(z), B(z) anchors".into())
    })?;
    Ok(UniversalSeries {
        a,
        b,
        sign,
        rejected,
    })
}

/// `(k, μ)` with `2k + |μ| = 8`: the integral `∫ δ^{2k} c_μ` on `S^[4]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub k: u32,
    pub mu: ChernMonomial,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ^{}·c[{}]", 2 * self.k, self.mu)
    }
}

/// All twelve shapes, grouped by `|μ|` from 8 down to 0.
pub fn shapes() -> Vec<Shape> {
    let mut out = Vec::new();
    for d in (0..=MAX_DEGREE).rev().step_by(2) {
        for mu in ChernMonomial::of_degree(d) {
            out.push(Shape {
                k: (MAX_DEGREE - d) / 2,
                mu,
            });
        }
    }
    out
}

/// Raw integrals and normalized Fujiki constants.
#[derive(Clone, Debug, PartialEq)]
pub struct FujikiTable {
    pub entries: BTreeMap<Shape, FujikiEntry>,
    /// `a`-monomials used as equations.
    pub equations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FujikiEntry {
    pub raw: Q,
    pub gamma: Q,
}

/// `(δ, δ)` on `S^[4]`.
pub const DELTA_SQUARE_FOUR: i64 = -6;
/// `(δ, δ)` on `S^[3]`.
pub const DELTA_SQUARE_THREE: i64 = -4;

impl FujikiTable {
    /// Solves `[z⁴] B²⁴ = Σ ∫δ^{2k}c_μ/(2k)! · Φ_μ` over every `a`-monomial.
    pub fn compute(b: &TruncSeries<APoly>, genus: &GenusExpansion) -> Result<Self> {
        let f = b.pow(&qi(24))?;
        let target = f.coeff(4);
        let shapes = shapes();
        let mut monomials: Vec<AMonomial> = target.terms().map(|(m, _)| *m).collect();
        for s in &shapes {
            monomials.extend(genus.coefficient(&s.mu).terms().map(|(m, _)| *m));
        }
        monomials.sort_by_key(|m| (a_weight(m), *m));
        monomials.dedup();
        let m = RatMatrix::from_fn(monomials.len(), shapes.len(), |i, j| {
            genus.coefficient(&shapes[j].mu).coefficient(&monomials[i]) / factorial(2 * shapes[j].k)
        });
        let rhs: Vec<Q> = monomials
            .iter()
            .map(|mono| target.coefficient(mono))
            .collect();
        let raw = match m.solve(&rhs)? {
            crate::linalg::Solution::Unique(v) => v,
            crate::linalg::Solution::Affine { kernel, .. } => {
                return Err(Error::Singular(format!(
                    "extraction system over {} monomials leaves {} shapes undetermined",
                    monomials.len(),
                    kernel.len()
                )))
            }
        };
        let entries = shapes
            .iter()
            .zip(raw)
            .map(|(s, raw)| {
                let gamma = &raw / qpow(&qi(DELTA_SQUARE_FOUR), s.k);
                (*s, FujikiEntry { raw, gamma })
            })
            .collect();
        Ok(FujikiTable {
            entries,
            equations: monomials.len(),
        })
    }

    /// Table from known `γ` values, keyed by part lists.
    pub fn from_gammas(values: &[(&[u32], Q)]) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (parts, gamma) in values {
            let mu = ChernMonomial::from_parts(parts)?;
            let k = (MAX_DEGREE - mu.degree()) / 2;
            let raw = gamma * qpow(&qi(DELTA_SQUARE_FOUR), k);
            entries.insert(
                Shape { k, mu },
                FujikiEntry {
                    raw,
                    gamma: gamma.clone(),
                },
            );
        }
        Ok(FujikiTable {
            entries,
            equations: 0,
        })
    }

    pub fn gamma(&self, mu: &ChernMonomial) -> Result<Q> {
        self.entries
            .iter()
            .find(|(s, _)| &s.mu == mu)
            .map(|(_, e)| e.gamma.clone())
            .ok_or_else(|| Error::InvalidArgument(format!("no Fujiki constant for {mu}")))
    }

    /// `∫ δ^{2k} c_μ`.
    pub fn raw(&self, mu: &ChernMonomial) -> Result<Q> {
        self.entries
            .iter()
            .find(|(s, _)| &s.mu == mu)
            .map(|(_, e)| e.raw.clone())
            .ok_or_else(|| Error::InvalidArgument(format!("no integral for {mu}")))
    }

    /// `γ(2^m)`.
    pub fn gamma_c2(&self, m: u8) -> Result<Q> {
        self.gamma(&ChernMonomial::c2_power(m))
    }

    /// Right-hand sides of the `c₂(S^[4])` determination, from `γ` and
    /// the `α(k, ℓ)` with `k + ℓ ≤ 3`.
    pub fn chern2_inputs(&self, alpha: &AlphaTable) -> Result<Chern2Inputs> {
        let d = qi(DELTA_SQUARE_FOUR);
        let g1 = self.gamma_c2(1)?;
        let g2 = self.gamma_c2(2)?;
        Ok(Chern2Inputs {
            linear: [
                alpha.get(0, 3)? * &g1,
                alpha.get(1, 2)? * &d * &g1,
                alpha.get(2, 1)? * qpow(&d, 2) * &g1,
                qpow(&d, 3) * &g1,
            ],
            quadratic: [
                alpha.get(0, 2)? * &g2,
                alpha.get(1, 1)? * &d * &g2,
                qpow(&d, 2) * &g2,
            ],
            quartic: self.gamma_c2(4)?,
        })
    }
}

/// `α(k, ℓ)` for `ℓ ≥ 1`; `α(k, 0) = 1`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AlphaTable {
    pub values: BTreeMap<(u32, u32), Q>,
    /// Entries computed on both `S^[3]` and `S^[4]`.
    pub cross_checked: Vec<(u32, u32)>,
}

impl AlphaTable {
    pub fn get(&self, k: u32, l: u32) -> Result<Q> {
        if l == 0 {
            return Ok(qi(1));
        }
        self.values
            .get(&(k, l))
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("α({k},{l}) is not available")))
    }

    /// From `S^[3]` with `c₂ = 4/3 θ`, for `k + ℓ ≤ 3`.
    pub fn from_three(r: &ThreeRing) -> Result<Self> {
        let d = qi(DELTA_SQUARE_THREE);
        let mut gamma = Vec::new();
        for m in 0..=3u32 {
            let k = 3 - m;
            gamma.push(r.product_value(Monomial::new(2 * k, 0, m))? / qpow(&d, k));
        }
        let mut values = BTreeMap::new();
        for l in 1..=3u32 {
            for k in 0..=3 - l {
                let m = 3 - k - l;
                let v = r.product_value(Monomial::new(2 * k, l, m))?
                    / (qpow(&d, k) * &gamma[m as usize]);
                values.insert((k, l), v);
            }
        }
        Ok(AlphaTable {
            values,
            cross_checked: Vec::new(),
        })
    }

    /// From `S^[4]` with a given `c₂` and the Fujiki table, for `k + ℓ ≤ 4`.
    pub fn from_four(r: &FourRing, c2: &Coords4, table: &FujikiTable) -> Result<Self> {
        let d = qi(DELTA_SQUARE_FOUR);
        let mut values = BTreeMap::new();
        for l in 1..=4u32 {
            for k in 0..=4 - l {
                let m = 4 - k - l;
                let g = table.gamma_c2(m as u8)?;
                ensure(!Zero::is_zero(&g), || format!("γ(2^{m}) vanishes"))?;
                let v = r.product_value(Monomial::new(2 * k, l, m), c2)? / (qpow(&d, k) * g);
                values.insert((k, l), v);
            }
        }
        Ok(AlphaTable {
            values,
            cross_checked: Vec::new(),
        })
    }

    /// Union of two tables; shared entries must agree.
    pub fn merge(small: &AlphaTable, large: &AlphaTable) -> Result<AlphaTable> {
        let mut out = large.clone();
        out.cross_checked.clear();
        for (key, v) in &small.values {
            match large.values.get(key) {
                Some(w) if w != v => {
                    return Err(Error::CheckFailed(format!(
                        "α{key:?} is {} on S^[3] but {} on S^[4]",
                        format_q(v),
                        format_q(w)
                    )))
                }
                Some(_) => out.cross_checked.push(*key),
                None => {
                    out.values.insert(*key, v.clone());
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> APoly {
        APoly::parse(s).unwrap()
    }

    #[test]
    fn chern_monomials() {
        assert_eq!(ChernMonomial::of_degree(8).len(), 5);
        assert_eq!(ChernMonomial::of_degree(6).len(), 3);
        assert_eq!(ChernMonomial::of_degree(0), vec![ChernMonomial::empty()]);
        assert_eq!(
            ChernMonomial::from_parts(&[2, 2, 4]).unwrap().to_string(),
            "2^2 4^1"
        );
        assert_eq!(ChernMonomial::empty().to_string(), "∅");
        assert!(ChernMonomial::from_parts(&[3]).is_err());
        assert_eq!(shapes().len(), 12);
    }

    #[test]
    fn power_sums_of_even_classes() {
        let p = power_sums();
        assert!(p[1].terms.is_empty() && p[3].terms.is_empty());
        let c2 = ChernMonomial::c2_power(1);
        assert_eq!(p[2].terms[&c2], qi(-2));
        // p_4 = 2c₂² - 4c₄
        assert_eq!(p[4].terms[&ChernMonomial::c2_power(2)], qi(2));
        assert_eq!(
            p[4].terms[&ChernMonomial::from_parts(&[4]).unwrap()],
            qi(-4)
        );
    }

    #[test]
    fn genus_expansion_low_degrees() {
        let g = GenusExpansion::compute().unwrap();
        assert_eq!(g.coefficient(&ChernMonomial::empty()), parse("1"));
        assert_eq!(
            g.coefficient(&ChernMonomial::c2_power(1)),
            parse("a1^2 - 2*a2")
        );
        assert_eq!(
            g.coefficient(&ChernMonomial::c2_power(2)),
            parse("a2^2 - 2*a1*a3 + 2*a4")
        );
        assert_eq!(
            g.coefficient(&ChernMonomial::from_parts(&[4]).unwrap()),
            parse("a1^4 - 4*a1^2*a2 + 2*a2^2 + 4*a1*a3 - 4*a4")
        );
        for (m, c) in g.monomials() {
            assert!(c.is_homogeneous_of(m.degree()), "{m}");
        }
    }

    #[test]
    fn total_chern_class_specialization() {
        // a_1 = 1, a_i = 0 otherwise turns Φ into the total Chern class
        let g = GenusExpansion::compute().unwrap();
        let mut a1 = [0u8; crate::series::APOLY_VARS];
        for (m, c) in g.monomials() {
            a1[0] = m.degree() as u8;
            let single = m.0.iter().filter(|&&e| e > 0).count() == 1 && m.0.iter().sum::<u8>() == 1;
            let want = if single || *m == ChernMonomial::empty() {
                qi(1)
            } else {
                qi(0)
            };
            assert_eq!(c.coefficient(&a1), want, "{m}");
        }
    }

    fn gamma_of(t: &FujikiTable, parts: &[u32]) -> Q {
        t.gamma(&ChernMonomial::from_parts(parts).unwrap()).unwrap()
    }

    #[test]
    fn universal_series_and_fujiki_constants() {
        let u = extract_ab(4).unwrap();
        assert_eq!(u.rejected.len(), 1);
        assert_eq!(u.sign, ZSign::Plus);
        let g = GenusExpansion::compute().unwrap();
        let t = FujikiTable::compute(&u.b, &g).unwrap();
        let want: [(&[u32], i64); 12] = [
            (&[2, 2, 2, 2], 1992240),
            (&[2, 2, 4], 813240),
            (&[2, 6], 182340),
            (&[4, 4], 332730),
            (&[8], 25650),
            (&[2, 2, 2], 59640),
            (&[2, 4], 24360),
            (&[6], 5460),
            (&[2, 2], 4932),
            (&[4], 2016),
            (&[2], 630),
            (&[], 105),
        ];
        for (parts, v) in want {
            assert_eq!(gamma_of(&t, parts), qi(v), "{parts:?}");
        }
        assert!(t.equations > 12);
    }

    #[test]
    fn alpha_from_three_and_merge() {
        let alg = std::sync::Arc::new(crate::frobenius::FrobeniusAlgebra::k3());
        let three = AlphaTable::from_three(&ThreeRing::new(alg).unwrap()).unwrap();
        let want = [
            ((0, 1), qi(23)),
            ((0, 2), qr(575, 3)),
            ((0, 3), qi(1035)),
            ((1, 1), qr(25, 3)),
            ((1, 2), qi(45)),
            ((2, 1), qr(27, 5)),
        ];
        for (key, v) in &want {
            assert_eq!(&three.get(key.0, key.1).unwrap(), v, "{key:?}");
        }
        assert_eq!(three.get(3, 0).unwrap(), qi(1));
        assert!(three.get(0, 4).is_err());
        let mut other = AlphaTable::default();
        other.values.insert((0, 4), qi(7));
        other.values.insert((0, 1), qi(23));
        let merged = AlphaTable::merge(&three, &other).unwrap();
        assert_eq!(merged.cross_checked, vec![(0, 1)]);
        assert_eq!(merged.values.len(), 7);
        other.values.insert((1, 1), qi(8));
        assert!(AlphaTable::merge(&three, &other).is_err());
    }
}
