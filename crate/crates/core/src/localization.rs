//! Torus localization on Hilbert schemes of points of `P²` and `P¹×P¹`.
//!
//! Fixed points are vector partitions: one Young tableau per fixed point
//! of the surface. Tangent weights at a tableau follow the
//! Ellingsrud–Strømme product; the global weights are obtained by the
//! linear change of torus characters of each affine chart.
//!
//! Bott sums are evaluated along a line `α = s·α₀, β = s·β₀` with rational
//! `(α₀, β₀)`, keeping track of the grading parameter `s`. Every sum is
//! evaluated at two such lines and the answers are compared.

use std::fmt;

use crate::rational::{qi, qr, Q};
use crate::series::{APoly, Coeff, TruncSeries, APOLY_VARS};
use crate::{Error, Result};

/// Young tableau given by column heights `b_0 ≥ b_1 ≥ … ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YTab {
    heights: Vec<usize>,
}

impl YTab {
    /// Trailing zero columns are dropped.
    pub fn new(mut heights: Vec<usize>) -> Result<Self> {
        if heights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "column heights {heights:?} are not weakly decreasing"
            )));
        }
        while heights.last() == Some(&0) {
            heights.pop();
        }
        Ok(YTab { heights })
    }

    pub fn empty() -> Self {
        YTab {
            heights: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.heights.iter().sum()
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    /// Height of column `i`, zero past the last column.
    pub fn height(&self, i: usize) -> usize {
        self.heights.get(i).copied().unwrap_or(0)
    }

    /// Boxes `(i, j)` with `0 ≤ j < b_i`.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.heights
            .iter()
            .enumerate()
            .flat_map(|(i, &b)| (0..b).map(move |j| (i, j)))
    }

    /// All tableaux with `n` boxes, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<YTab> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YTab>) {
            if n == 0 {
                out.push(YTab {
                    heights: cur.clone(),
                });
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for YTab {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.heights.iter().map(|b| b.to_string()).collect();
        write!(f, "[{}]", h.join(","))
    }
}

/// Linear form `a·α + b·β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl Weight {
    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Replaces `α, β` by the forms of a chart.
    pub fn substitute(&self, chart: &Chart) -> Weight {
        Weight::new(
            self.a * chart.alpha.a + self.b * chart.beta.a,
            self.a * chart.alpha.b + self.b * chart.beta.b,
        )
    }

    pub fn eval(&self, s: &Specialization) -> Q {
        qi(self.a) * &s.alpha + qi(self.b) * &s.beta
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight::new(self.a + o.a, self.b + o.b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}α{:+}β", self.a, self.b)
    }
}

/// Torus characters of an affine chart, as forms in the global `α, β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub alpha: Weight,
    pub beta: Weight,
}

/// Toric surfaces with their charts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Surface {
    P2,
    P1xP1,
}

impl Surface {
    pub fn charts(&self) -> Vec<Chart> {
        let c = |a: (i64, i64), b: (i64, i64)| Chart {
            alpha: Weight::new(a.0, a.1),
            beta: Weight::new(b.0, b.1),
        };
        match self {
            Surface::P2 => vec![c((1, 0), (0, 1)), c((1, -1), (0, -1)), c((-1, 1), (-1, 0))],
            Surface::P1xP1 => vec![
                c((1, 0), (0, 1)),
                c((-1, 0), (0, 1)),
                c((1, 0), (0, -1)),
                c((-1, 0), (0, -1)),
            ],
        }
    }

    /// `(∫c₁², ∫c₂)` of the surface.
    pub fn chern_numbers(&self) -> (i64, i64) {
        match self {
            Surface::P2 => (9, 3),
            Surface::P1xP1 => (8, 4),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Surface::P2 => "P2",
            Surface::P1xP1 => "P1xP1",
        }
    }
}

/// Chern roots of the tangent space at a tableau, read off from
/// `Π_{1≤i≤j≤n} Π_{s=b_j}^{b_{j-1}-1} (t+(i-j-1)α+(b_{i-1}-s-1)β)(t+(j-i)α+(s-b_{i-1})β)`.
pub fn tangent_weights(t: &YTab) -> Result<Vec<Weight>> {
    let n = t.n();
    let b = |i: usize| t.height(i) as i64;
    let mut out = Vec::with_capacity(2 * n);
    for j in 1..=n {
        for i in 1..=j {
            for s in b(j)..b(j - 1) {
                let (ii, jj) = (i as i64, j as i64);
                out.push(Weight::new(ii - jj - 1, b(i - 1) - s - 1));
                out.push(Weight::new(jj - ii, s - b(i - 1)));
            }
        }
    }
    if let Some(w) = out.iter().find(|w| w.is_zero()) {
        return Err(Error::CheckFailed(format!(
            "zero tangent weight {w} at {t}"
        )));
    }
    if out.len() != 2 * n {
        return Err(Error::CheckFailed(format!(
            "{} tangent weights at {t}",
            out.len()
        )));
    }
    Ok(out)
}

/// First Chern class of `O_Z` at a tableau: `Σ_{(i,j)} (iα + jβ)`.
pub fn zform(t: &YTab) -> Weight {
    t.boxes().fold(Weight::default(), |acc, (i, j)| {
        acc + Weight::new(i as i64, j as i64)
    })
}

/// Torus-fixed point of `S^[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub surface: Surface,
    pub components: Vec<YTab>,
    pub weights: Vec<Weight>,
    pub zvalue: Weight,
}

/// All vector partitions of `n` with `parts` components.
pub fn vector_partitions(n: usize, parts: usize) -> Vec<Vec<YTab>> {
    let tables: Vec<Vec<YTab>> = (0..=n).map(YTab::all).collect();
    let mut out = Vec::new();
    fn rec(
        left: usize,
        slots: usize,
        tables: &[Vec<YTab>],
        cur: &mut Vec<YTab>,
        out: &mut Vec<Vec<YTab>>,
    ) {
        if slots == 1 {
            for t in &tables[left] {
                cur.push(t.clone());
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for k in (0..=left).rev() {
            for t in &tables[k] {
                cur.push(t.clone());
                rec(left - k, slots - 1, tables, cur, out);
                cur.pop();
            }
        }
    }
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    rec(n, parts, &tables, &mut Vec::new(), &mut out);
    out
}

/// Fixed points of `S^[n]` with chart-substituted weights and z-forms.
pub fn fixed_points(surface: Surface, n: usize) -> Result<Vec<FixedPoint>> {
    let charts = surface.charts();
    vector_partitions(n, charts.len())
        .into_iter()
        .map(|components| {
            let mut weights = Vec::with_capacity(2 * n);
            let mut zvalue = Weight::default();
            for (t, chart) in components.iter().zip(&charts) {
                weights.extend(tangent_weights(t)?.iter().map(|w| w.substitute(chart)));
                zvalue = zvalue + zform(t).substitute(chart);
            }
            Ok(FixedPoint {
                surface,
                components,
                weights,
                zvalue,
            })
        })
        .collect()
}

/// A line `α = s·α₀, β = s·β₀` in the weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub alpha: Q,
    pub beta: Q,
}

/// The two lines every Bott sum is evaluated on.
pub fn specializations() -> [Specialization; 2] {
    [
        Specialization {
            alpha: qi(1),
            beta: qr(4999, 4993),
        },
        Specialization {
            alpha: qi(1),
            beta: qr(5003, 4987),
        },
    ]
}

/// Elementary symmetric polynomials `e_0..e_len` of `values`.
pub fn elementary_symmetric(values: &[Q]) -> Vec<Q> {
    let mut e = vec![qi(0); values.len() + 1];
    e[0] = qi(1);
    for (m, v) in values.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            let add = &e[k - 1] * v;
            e[k] += add;
        }
    }
    e
}

/// Series in the grading parameter `s`, truncated at `s^{2n}`.
pub type GradedScalar<C> = TruncSeries<C>;

/// Sums graded contributions, each already divided by `e_{2n}` at `s = 1`;
/// checks that every coefficient below `s^{2n}` cancels and returns the
/// `s^{2n}` coefficient.
fn collect<C: Coeff>(contributions: Vec<GradedScalar<C>>, top: usize) -> Result<C> {
    let mut total = GradedScalar::<C>::zero(top);
    for c in &contributions {
        total = total.add(c)?;
    }
    for k in 0..top {
        if !total.coeff(k).is_zero() {
            return Err(Error::CheckFailed(format!(
                "Bott sum has a nonzero coefficient in s-degree {} below the top",
                k as i64 - top as i64
            )));
        }
    }
    Ok(total.coeff(top).clone())
}

fn agree<C: Coeff>(values: Vec<C>, what: impl FnOnce() -> String) -> Result<C> {
    let first = values[0].clone();
    if values.iter().any(|v| v != &first) {
        return Err(Error::CheckFailed(format!(
            "specializations disagree for {}",
            what()
        )));
    }
    Ok(first)
}

/// `∫_{S^[n]} f^{zpow} Π_k c_k`, with `f = c₁(O^[n])`.
pub fn bott_integral(surface: Surface, n: usize, zpow: usize, mu: &[usize]) -> Result<Q> {
    let top = 2 * n;
    if zpow + mu.iter().sum::<usize>() != top {
        return Err(Error::InvalidArgument(format!(
            "f^{zpow}·c_{mu:?} does not have degree {top}"
        )));
    }
    if mu.iter().any(|&k| k == 0 || k > top) {
        return Err(Error::InvalidArgument(format!(
            "Chern indices {mu:?} out of range"
        )));
    }
    let points = fixed_points(surface, n)?;
    let mut values = Vec::new();
    for spec in specializations() {
        let mut contributions = Vec::with_capacity(points.len());
        for p in &points {
            let w: Vec<Q> = p.weights.iter().map(|w| w.eval(&spec)).collect();
            let e = elementary_symmetric(&w);
            let mut num = crate::rational::qpow(&p.zvalue.eval(&spec), zpow as u32);
            for &k in mu {
                num *= &e[k];
            }
            let mut coeffs = vec![qi(0); top + 1];
            coeffs[top] = num / &e[top];
            contributions.push(GradedScalar::new(coeffs, top));
        }
        values.push(collect(contributions, top)?);
    }
    agree(values, || {
        format!("∫ f^{zpow} c_{mu:?} on {}^[{n}]", surface.name())
    })
}

/// Sign of `c₁(O^[n])` inside the exponential of the genus series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZSign {
    Plus,
    Minus,
}

impl ZSign {
    pub fn value(&self) -> i64 {
        match self {
            ZSign::Plus => 1,
            ZSign::Minus => -1,
        }
    }
}

/// `Φ(s·w) = 1 + Σ_k a_k w^k s^k` up to `s^top`.
fn phi_factor(w: &Q, top: usize) -> GradedScalar<APoly> {
    let mut coeffs = vec![APoly::constant(qi(1))];
    let mut pw = qi(1);
    for k in 1..=top.min(APOLY_VARS) {
        pw *= w;
        coeffs.push(APoly::var(k).scale(&pw));
    }
    GradedScalar::new(coeffs, top)
}

/// Contribution of one fixed point to `∫ exp(±f) Φ(S^[n])`.
fn genus_contribution(
    p: &FixedPoint,
    spec: &Specialization,
    sign: ZSign,
    top: usize,
) -> Result<GradedScalar<APoly>> {
    let z = p.zvalue.eval(spec) * qi(sign.value());
    // exp(s z) truncated
    let mut exp_coeffs = Vec::with_capacity(top + 1);
    let mut term = qi(1);
    for k in 0..=top {
        if k > 0 {
            term = term * &z / qi(k as i64);
        }
        exp_coeffs.push(APoly::constant(term.clone()));
    }
    let mut acc = GradedScalar::new(exp_coeffs, top);
    let mut euler = qi(1);
    for w in &p.weights {
        let w = w.eval(spec);
        acc = acc.mul(&phi_factor(&w, top))?;
        euler *= w;
    }
    Ok(acc.scale(&(qi(1) / euler)))
}

/// `F_S(z) = Σ_n z^n ∫_{S^[n]} exp(±f) Φ(S^[n])` up to `z^{max_n}`.
pub fn genus_bott_series(
    surface: Surface,
    max_n: usize,
    sign: ZSign,
) -> Result<TruncSeries<APoly>> {
    let mut coeffs = vec![APoly::constant(qi(1))];
    for n in 1..=max_n {
        let top = 2 * n;
        let points = fixed_points(surface, n)?;
        let mut values = Vec::new();
        for spec in specializations() {
            let contributions = points
                .iter()
                .map(|p| genus_contribution(p, &spec, sign, top))
                .collect::<Result<Vec<_>>>()?;
            values.push(collect(contributions, top)?);
        }
        coeffs.push(agree(values, || format!("z^{n} of F_{}", surface.name()))?);
    }
    Ok(TruncSeries::new(coeffs, max_n))
}

/// Number of `c`-vector partitions of each `n ≤ max`, from `Π_k (1-q^k)^{-c}`.
pub fn vector_partition_counts(components: usize, max: usize) -> Vec<u64> {
    let mut series = vec![0u64; max + 1];
    series[0] = 1;
    for _ in 0..components {
        for k in 1..=max {
            // multiply by 1/(1-q^k)
            for m in k..=max {
                series[m] += series[m - k];
            }
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    /// Arm/leg form of the tangent character, negated to Chern roots.
    fn arm_leg_roots(t: &YTab) -> Vec<Weight> {
        let mut out = Vec::new();
        for (i, j) in t.boxes() {
            let arm = (t.height(i) - j - 1) as i64;
            let leg = t.heights().iter().skip(i + 1).filter(|&&b| b > j).count() as i64;
            out.push(Weight::new(-(leg + 1), arm));
            out.push(Weight::new(leg, -(arm + 1)));
        }
        out
    }

    fn multiset(ws: &[Weight]) -> BTreeMap<Weight, usize> {
        let mut m = BTreeMap::new();
        for w in ws {
            *m.entry(*w).or_default() += 1;
        }
        m
    }

    #[test]
    fn tableaux_enumeration() {
        assert_eq!(YTab::all(4).len(), 5);
        assert_eq!(YTab::all(0), vec![YTab::empty()]);
        assert!(YTab::new(vec![1, 2]).is_err());
        assert_eq!(YTab::new(vec![2, 1, 0]).unwrap().heights(), &[2, 1]);
    }

    #[test]
    fn single_box_weights() {
        let t = YTab::new(vec![1]).unwrap();
        let w = tangent_weights(&t).unwrap();
        assert_eq!(
            multiset(&w),
            multiset(&[Weight::new(-1, 0), Weight::new(0, -1)])
        );
        let spec = &specializations()[0];
        let e = elementary_symmetric(&w.iter().map(|x| x.eval(spec)).collect::<Vec<_>>());
        assert_eq!(e[2], &spec.alpha * &spec.beta);
    }

    #[test]
    fn product_formula_matches_arm_leg_characters() {
        for n in 1..=6 {
            for t in YTab::all(n) {
                let w = tangent_weights(&t).unwrap();
                assert_eq!(w.len(), 2 * n);
                assert_eq!(multiset(&w), multiset(&arm_leg_roots(&t)), "{t}");
            }
        }
    }

    #[test]
    fn zforms() {
        assert_eq!(zform(&YTab::new(vec![1]).unwrap()), Weight::new(0, 0));
        assert_eq!(zform(&YTab::new(vec![2]).unwrap()), Weight::new(0, 1));
        assert_eq!(zform(&YTab::new(vec![1, 1]).unwrap()), Weight::new(1, 0));
        assert_eq!(zform(&YTab::new(vec![2, 1]).unwrap()), Weight::new(1, 1));
    }

    #[test]
    fn fixed_point_counts() {
        for (surface, c) in [(Surface::P2, 3), (Surface::P1xP1, 4)] {
            let counts = vector_partition_counts(c, 4);
            for n in 0..=4 {
                assert_eq!(fixed_points(surface, n).unwrap().len() as u64, counts[n]);
            }
        }
        assert_eq!(fixed_points(Surface::P2, 4).unwrap().len(), 51);
        assert_eq!(fixed_points(Surface::P1xP1, 4).unwrap().len(), 105);
        assert_eq!(fixed_points(Surface::P2, 1).unwrap().len(), 3);
    }

    #[test]
    fn nonvanishing_euler_classes() {
        for s in [Surface::P2, Surface::P1xP1] {
            for n in 1..=4 {
                for p in fixed_points(s, n).unwrap() {
                    for spec in specializations() {
                        let e: Q = p.weights.iter().map(|w| w.eval(&spec)).product();
                        assert_ne!(e, qi(0));
                    }
                }
            }
        }
    }

    #[test]
    fn surface_chern_numbers() {
        for s in [Surface::P2, Surface::P1xP1] {
            let (c11, c2) = s.chern_numbers();
            assert_eq!(bott_integral(s, 1, 0, &[2]).unwrap(), qi(c2));
            assert_eq!(bott_integral(s, 1, 0, &[1, 1]).unwrap(), qi(c11));
            assert_eq!(bott_integral(s, 1, 2, &[]).unwrap(), qi(0));
        }
        assert!(bott_integral(Surface::P2, 1, 1, &[2]).is_err());
    }

    #[test]
    fn euler_characteristics_of_hilbert_schemes() {
        // χ((P²)^[n]) = 3, 9, 22, 51 and χ((P¹×P¹)^[n]) = 4, 14, 40, 105
        let want = [
            (Surface::P2, [3, 9, 22, 51]),
            (Surface::P1xP1, [4, 14, 40, 105]),
        ];
        for (s, chis) in want {
            for n in 1..=3 {
                assert_eq!(bott_integral(s, n, 0, &[2 * n]).unwrap(), qi(chis[n - 1]));
            }
        }
    }

    #[test]
    fn genus_series_first_order() {
        for (s, a, b) in [(Surface::P2, 9, 3), (Surface::P1xP1, 8, 4)] {
            let f = genus_bott_series(s, 1, ZSign::Plus).unwrap();
            let want = APoly::parse(&format!("{}*a2 + {b}*a1^2", a - 2 * b)).unwrap();
            assert_eq!(f.coeff(1), &want, "{s:?}");
        }
    }
}
