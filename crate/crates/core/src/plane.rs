//! Classes of Lagrangian 4-planes in manifolds of `K3^[4]` type.
//!
//! With `x = (λ, λ)` the intersection form `M(λ)` on the basis
//! `λ⁴, λ²θ, λ²c₂, θ², θc₂, c₂², αθ, αc₂` of middle cohomology determines
//! `[P⁴]` from its restrictions, and `[P⁴]² = 5` becomes a quartic relation
//! between `x` and `y`, where `α|_{P⁴} = y h²`.

use std::fmt;

use num_traits::{One, Zero};

use crate::fujiki::{AlphaTable, ChernMonomial, FujikiTable};
use crate::linalg::RatMatrix;
use crate::rational::{binomial, format_q, qi, qpow, qr, Q};
use crate::upoly::UPoly;
use crate::{ensure, Error, Result};

/// Basis of middle cohomology, in this order everywhere.
pub const BASIS: [&str; 8] = ["λ⁴", "λ²θ", "λ²c₂", "θ²", "θc₂", "c₂²", "αθ", "αc₂"];

/// `(k, ℓ, m)` of `λ^{2k} θ^ℓ c₂^m` for the first six basis elements.
const EXPONENTS: [(u32, u32, u32); 6] = [
    (2, 0, 0),
    (1, 1, 0),
    (1, 0, 1),
    (0, 2, 0),
    (0, 1, 1),
    (0, 0, 2),
];

/// Basis of `I⁸` used for the linear relation among degree-8 classes.
pub const RELATION_BASIS: [&str; 4] = ["θ²", "θc₂", "c₂²", "c₄"];

/// Constants feeding `M(λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionData {
    pub alpha: AlphaTable,
    pub fujiki: FujikiTable,
    /// `α²θ², α²θc₂, α²c₂²`.
    pub alpha_squares: [Q; 3],
}

impl IntersectionData {
    /// `∫ λ^{2k} θ^ℓ c₂^m` as a coefficient of `x^k`.
    fn monomial(&self, k: u32, l: u32, m: u32) -> Result<Q> {
        ensure(k + l + m == 4, || {
            format!("λ^{}θ^{l}c₂^{m} is not of top degree", 2 * k)
        })?;
        Ok(self.alpha.get(k, l)? * self.fujiki.gamma_c2(m as u8)?)
    }

    /// `∫ θ^ℓ c_μ` with `2ℓ + |μ| = 8`, using `α(0, ℓ) γ(μ)`.
    fn theta_chern(&self, l: u32, mu: &[u32]) -> Result<Q> {
        let mu = ChernMonomial::from_parts(mu)?;
        ensure(2 * l + mu.degree() == 8, || {
            format!("θ^{l}c[{mu}] is not of top degree")
        })?;
        Ok(self.alpha.get(0, l)? * self.fujiki.gamma(&mu)?)
    }
}

/// `M(λ)` at a given `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct MLambda {
    pub x: Q,
    pub matrix: RatMatrix,
}

pub fn m_lambda(data: &IntersectionData, x: &Q) -> Result<MLambda> {
    if x.is_zero() {
        return Err(Error::Domain("M(λ) is degenerate at (λ,λ) = 0".into()));
    }
    let mut m = RatMatrix::zeros(8, 8);
    for (i, a) in EXPONENTS.iter().enumerate() {
        for (j, b) in EXPONENTS.iter().enumerate() {
            let k = a.0 + b.0;
            m[(i, j)] = data.monomial(k, a.1 + b.1, a.2 + b.2)? * qpow(x, k);
        }
    }
    let [s0, s1, s2] = &data.alpha_squares;
    m[(6, 6)] = s0.clone();
    m[(6, 7)] = s1.clone();
    m[(7, 6)] = s1.clone();
    m[(7, 7)] = s2.clone();
    Ok(MLambda {
        x: x.clone(),
        matrix: m,
    })
}

/// `c_{2j}(T_X|_{Pⁿ}) = (-1)^j binom(n+1, j) h^{2j}`.
pub fn chern_restriction(n: u64, j: u64) -> Q {
    let sign = if j.is_multiple_of(2) { 1 } else { -1 };
    qi(sign * binomial(n + 1, j))
}

/// `n` with `θ|_{P⁴} = n h²`, from the degree-8 relation restricted to `P⁴`.
pub fn theta_restriction(relation: &[Q; 4]) -> Result<Q> {
    ensure(!relation[0].is_zero(), || {
        "relation does not involve θ²".into()
    })?;
    let c2 = chern_restriction(4, 1);
    let c4 = chern_restriction(4, 2);
    // r₀n² + r₁ n c₂ + r₂ c₂² + r₃ c₄ = 0
    let poly = UPoly::new(vec![
        &relation[2] * &c2 * &c2 + &relation[3] * &c4,
        &relation[1] * &c2,
        relation[0].clone(),
    ]);
    let roots = poly.rational_roots();
    match roots.as_slice() {
        [r] => Ok(r.clone()),
        _ => Err(Error::CheckFailed(format!(
            "θ restriction is not a unique rational number: roots {:?}",
            roots.iter().map(format_q).collect::<Vec<_>>()
        ))),
    }
}

/// Pairings of `[P⁴]` with the basis, from the restrictions to `P⁴`.
pub fn restriction_rhs(x: &Q, y: &Q) -> Vec<Q> {
    let lam = x / qi(6);
    let theta = qr(-7, 2);
    let c2 = chern_restriction(4, 1);
    let l2 = &lam * &lam;
    vec![
        &l2 * &l2,
        &theta * &l2,
        &c2 * &l2,
        &theta * &theta,
        &theta * &c2,
        &c2 * &c2,
        &theta * y,
        &c2 * y,
    ]
}

/// Coefficients of `[P⁴]` on [`BASIS`].
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneClass {
    pub x: Q,
    pub y: Q,
    pub coefficients: Vec<Q>,
}

pub fn solve_plane(data: &IntersectionData, x: &Q, y: &Q) -> Result<PlaneClass> {
    let m = m_lambda(data, x)?;
    let coefficients = m.matrix.solve(&restriction_rhs(x, y))?.unique()?;
    Ok(PlaneClass {
        x: x.clone(),
        y: y.clone(),
        coefficients,
    })
}

/// Laurent polynomial `Σ_{i} c_i x^{low + i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    pub low: i32,
    pub coeffs: Vec<Q>,
}

impl Laurent {
    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        let shift = if self.low >= 0 {
            qpow(x, self.low as u32)
        } else {
            Q::one() / qpow(x, (-self.low) as u32)
        };
        acc * shift
    }

    /// Coefficient of `x^e`.
    pub fn coeff(&self, e: i32) -> Q {
        usize::try_from(e - self.low)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponents with nonzero coefficients.
    pub fn support(&self) -> Vec<i32> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| self.low + i as i32)
            .collect()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    /// Fits `f` with exponents in `low..=high` at sample points and checks
    /// the fit at further points.
    pub fn reconstruct(f: impl Fn(&Q) -> Result<Q>, low: i32, high: i32) -> Result<Laurent> {
        ensure(low <= high, || "empty exponent range".into())?;
        let needed = (high - low + 1) as usize;
        let samples: Vec<Q> = (0..needed + VERIFY_POINTS)
            .map(|i| sample_point(i as i64))
            .collect();
        let mut values = Vec::with_capacity(samples.len());
        for s in &samples {
            values.push(f(s)?);
        }
        let shift = |s: &Q| {
            if low >= 0 {
                Q::one() / qpow(s, low as u32)
            } else {
                qpow(s, (-low) as u32)
            }
        };
        let points: Vec<(Q, Q)> = samples[..needed]
            .iter()
            .zip(&values)
            .map(|(s, v)| (s.clone(), v * shift(s)))
            .collect();
        let poly = UPoly::interpolate(&points)?;
        let coeffs = (0..needed).map(|i| poly.coeff(i)).collect();
        let fit = Laurent { low, coeffs };
        for (s, v) in samples.iter().zip(&values).skip(needed) {
            if &fit.eval(s) != v {
                return Err(Error::CheckFailed(format!(
                    "no Laurent polynomial with exponents {low}..={high} fits at x = {}",
                    format_q(s)
                )));
            }
        }
        Ok(fit.trimmed())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => format_q(&self.coeff(e)),
                1 => format!("{}·x", format_q(&self.coeff(e))),
                e => format!("{}·x^{e}", format_q(&self.coeff(e))),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            let joined = terms.join(" + ").replace("+ -", "- ");
            write!(f, "{joined}")
        }
    }
}

const VERIFY_POINTS: usize = 3;
/// Exponent window for the rational functions of `x` that occur here.
const LOW: i32 = -8;
const HIGH: i32 = 8;

/// Distinct nonzero sample values of `x`.
pub fn sample_point(i: i64) -> Q {
    let n = i + 1;
    let v = qr(7 * n + 3, 2 * n + 1);
    if i % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `[P⁴]` as `P(x) + y Q(x)` componentwise.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicPlaneClass {
    pub constant: Vec<Laurent>,
    pub linear_y: Vec<Laurent>,
}

impl SymbolicPlaneClass {
    pub fn eval(&self, x: &Q, y: &Q) -> Vec<Q> {
        self.constant
            .iter()
            .zip(&self.linear_y)
            .map(|(p, q)| p.eval(x) + q.eval(x) * y)
            .collect()
    }
}

pub fn symbolic_plane_class(data: &IntersectionData) -> Result<SymbolicPlaneClass> {
    let mut constant = Vec::new();
    let mut linear_y = Vec::new();
    for i in 0..8 {
        let at = |y: i64| {
            move |x: &Q| -> Result<Q> { Ok(solve_plane(data, x, &qi(y))?.coefficients[i].clone()) }
        };
        let p = Laurent::reconstruct(at(0), LOW, HIGH)?;
        let p1 = Laurent::reconstruct(at(1), LOW, HIGH)?;
        let q = Laurent::reconstruct(|x: &Q| Ok(p1.eval(x) - p.eval(x)), LOW, HIGH)?;
        constant.push(p);
        linear_y.push(q);
    }
    Ok(SymbolicPlaneClass { constant, linear_y })
}

/// `vᵀ M(λ) v` for the solved class.
pub fn self_intersection(data: &IntersectionData, x: &Q, y: &Q) -> Result<Q> {
    let m = m_lambda(data, x)?;
    let v = solve_plane(data, x, y)?.coefficients;
    let mv = m.matrix.mul_vec(&v)?;
    Ok(v.iter().zip(&mv).map(|(a, b)| a * b).sum())
}

/// `y² = Σ_i coeffs[i] x^{4-i}`, normalized from `[P⁴]² = 5`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticRelation {
    /// `[P⁴]²` as `s₀(x) + s₁(x) y + s₂(x) y²`.
    pub self_intersection: [Laurent; 3],
    pub coeffs: [Q; 5],
}

impl QuarticRelation {
    pub fn rhs(&self, x: &Q) -> Q {
        self.coeffs.iter().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// `y² - rhs(x)`.
    pub fn residual(&self, x: &Q, y: &Q) -> Q {
        y * y - self.rhs(x)
    }
}

/// Self-intersection of a Lagrangian `P⁴`.
pub const PLANE_SELF_INTERSECTION: i64 = 5;

pub fn self_intersection_constraint(data: &IntersectionData) -> Result<QuarticRelation> {
    let at = |y: i64| move |x: &Q| self_intersection(data, x, &qi(y));
    let f0 = Laurent::reconstruct(at(0), LOW, HIGH)?;
    let f1 = Laurent::reconstruct(at(1), LOW, HIGH)?;
    let fm = Laurent::reconstruct(at(-1), LOW, HIGH)?;
    let half = qr(1, 2);
    let s1 = Laurent::reconstruct(|x| Ok((f1.eval(x) - fm.eval(x)) * &half), LOW, HIGH)?;
    let s2 = Laurent::reconstruct(
        |x| Ok((f1.eval(x) + fm.eval(x)) * &half - f0.eval(x)),
        LOW,
        HIGH,
    )?;
    ensure(s1.is_zero(), || "[P⁴]² has a term linear in y".into())?;
    ensure(s2.support() == vec![0], || {
        format!("y² coefficient {s2} depends on x")
    })?;
    ensure(f0.support().iter().all(|e| (0..=4).contains(e)), || {
        format!("[P⁴]² at y = 0 is not a quartic in x: {f0}")
    })?;
    let d = -s2.coeff(0);
    let mut coeffs: [Q; 5] = std::array::from_fn(|i| f0.coeff(4 - i as i32) / &d);
    coeffs[4] -= qi(PLANE_SELF_INTERSECTION) / &d;
    Ok(QuarticRelation {
        self_intersection: [f0, s1, s2],
        coeffs,
    })
}

/// `[P⁴]` after substituting the admissible solution and `ρ = λ/3`.
#[derive(Clone, Debug, PartialEq)]
pub struct FinalClass {
    pub x: Q,
    pub y: Q,
    /// Coefficients on `ρ⁴, ρ²θ, ρ²c₂, θ², θc₂, c₂², αθ, αc₂`.
    pub coefficients: Vec<Q>,
    /// `(ℓ, ℓ)` for the line class `ℓ = λ/6`.
    pub line_square: Q,
}

impl FinalClass {
    /// Coefficients times `denominator`.
    pub fn scaled(&self, denominator: i64) -> Vec<Q> {
        self.coefficients
            .iter()
            .map(|c| c * qi(denominator))
            .collect()
    }
}

/// Requires `solutions` to be exactly the single admissible pair.
pub fn final_class(data: &IntersectionData, solutions: &[(Q, Q)]) -> Result<FinalClass> {
    let (x, y) = match solutions {
        [(x, y)] => (x.clone(), y.clone()),
        _ => {
            return Err(Error::CheckFailed(format!(
                "uniqueness not established: {} admissible solutions",
                solutions.len()
            )))
        }
    };
    let class = solve_plane(data, &x, &y)?;
    let three = qi(3);
    let mut coefficients = class.coefficients;
    coefficients[0] *= qpow(&three, 4);
    coefficients[1] *= qpow(&three, 2);
    coefficients[2] *= qpow(&three, 2);
    Ok(FinalClass {
        line_square: &x / qi(36),
        x,
        y,
        coefficients,
    })
}

/// Intersection matrix on [`RELATION_BASIS`].
pub fn relation_matrix(data: &IntersectionData) -> Result<RatMatrix> {
    // (ℓ, μ) of each basis element
    let basis: [(u32, &[u32]); 4] = [(2, &[]), (1, &[2]), (0, &[2, 2]), (0, &[4])];
    let mut m = RatMatrix::zeros(4, 4);
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let mu: Vec<u32> = a.1.iter().chain(b.1).copied().collect();
            m[(i, j)] = data.theta_chern(a.0 + b.0, &mu)?;
        }
    }
    Ok(m)
}

/// The relation among degree-8 classes, normalized so the `θ²` coefficient is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeEightRelation {
    pub matrix: RatMatrix,
    pub rank: usize,
    pub kernel: [Q; 4],
}

pub fn degree_eight_relation(data: &IntersectionData) -> Result<DegreeEightRelation> {
    let matrix = relation_matrix(data)?;
    let rank = matrix.rank();
    let kernel = matrix.kernel_basis();
    let v = match kernel.as_slice() {
        [v] => v,
        _ => {
            return Err(Error::CheckFailed(format!(
                "kernel has dimension {}",
                kernel.len()
            )))
        }
    };
    ensure(!v[0].is_zero(), || {
        "kernel vector has no θ² component".into()
    })?;
    let kernel = std::array::from_fn(|i| &v[i] / &v[0]);
    Ok(DegreeEightRelation {
        matrix,
        rank,
        kernel,
    })
}

/// `det M(λ)` as a polynomial in `x`.
pub fn determinant_polynomial(data: &IntersectionData) -> Result<UPoly> {
    let det = Laurent::reconstruct(|x| m_lambda(data, x)?.matrix.det(), 0, 12)?;
    Ok(UPoly::new((0..=12).map(|e| det.coeff(e)).collect()))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Constants from the reference tables, for fast unit tests.
    pub(crate) fn reference_data() -> IntersectionData {
        let mut alpha = AlphaTable::default();
        for ((k, l), v) in [
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
        ] {
            alpha.values.insert((k, l), v);
        }
        let fujiki = FujikiTable::from_gammas(&[
            (&[2, 2, 2, 2], qi(1992240)),
            (&[2, 2, 4], qi(813240)),
            (&[2, 6], qi(182340)),
            (&[4, 4], qi(332730)),
            (&[8], qi(25650)),
            (&[2, 2, 2], qi(59640)),
            (&[2, 4], qi(24360)),
            (&[6], qi(5460)),
            (&[2, 2], qi(4932)),
            (&[4], qi(2016)),
            (&[2], qi(630)),
            (&[], qi(105)),
        ])
        .unwrap();
        IntersectionData {
            alpha,
            fujiki,
            alpha_squares: [qi(9450), qi(14148), qi(21168)],
        }
    }

    #[test]
    fn matrix_entries() {
        let d = reference_data();
        let x = qi(-6);
        let m = m_lambda(&d, &x).unwrap().matrix;
        assert_eq!(m[(0, 3)], qi(84564));
        assert_eq!(m[(0, 0)], qi(136080));
        assert_eq!(m[(3, 3)], qi(450225));
        assert_eq!(m[(6, 7)], qi(14148));
        assert!(m.is_symmetric());
        let m = m_lambda(&d, &qi(1)).unwrap().matrix;
        assert_eq!(m[(1, 3)], qi(19575));
        assert_eq!(m[(4, 5)], qi(1371720));
        assert_eq!(m[(2, 4)], qi(41100));
        assert_eq!(m[(0, 6)], qi(0));
        assert!(m_lambda(&d, &qi(0)).is_err());
        assert!(!m_lambda(&d, &qi(-126))
            .unwrap()
            .matrix
            .det()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn determinant_vanishes_only_at_zero() {
        let p = determinant_polynomial(&reference_data()).unwrap();
        assert_eq!(p.rational_roots(), vec![qi(0)]);
    }

    #[test]
    fn restrictions() {
        assert_eq!(chern_restriction(4, 2), qi(10));
        assert_eq!(chern_restriction(4, 1), qi(-5));
        let r = restriction_rhs(&qi(12), &qi(2));
        assert_eq!(r[0], qi(16));
        assert_eq!(r[3], qr(49, 4));
        assert_eq!(r[5], qi(25));
        assert_eq!(r[7], qi(-10));
    }

    #[test]
    fn relation_and_theta_restriction() {
        let rel = degree_eight_relation(&reference_data()).unwrap();
        assert_eq!(rel.rank, 3);
        assert_eq!(rel.kernel, [qi(1), qr(-7, 5), qr(31, 60), qr(-1, 15)]);
        assert_eq!(theta_restriction(&rel.kernel).unwrap(), qr(-7, 2));
    }

    #[test]
    fn laurent_fit() {
        let f = |x: &Q| Ok(qi(3) * x * x - qr(1, 2) / x + qi(7) / (x * x * x));
        let l = Laurent::reconstruct(f, -8, 8).unwrap();
        assert_eq!(l.support(), vec![-3, -1, 2]);
        assert_eq!(l.coeff(-1), qr(-1, 2));
        let g = |x: &Q| Ok(Q::one() / (x + qi(1000)));
        assert!(Laurent::reconstruct(g, -2, 2).is_err());
    }

    #[test]
    fn quartic_and_final_class() {
        let d = reference_data();
        let q = self_intersection_constraint(&d).unwrap();
        assert_eq!(q.self_intersection[2].coeff(0), qr(-7, 2376));
        assert_eq!(q.residual(&qi(-126), &qi(0)), qi(0));
        let want = [
            qr(25, 4096 * 81 * 7),
            qr(25, 512 * 81),
            qr(13 * 31, 512 * 9 * 7),
            qr(9, 128),
            qr(-9 * 5 * 49 * 197, 256),
        ];
        assert_eq!(q.coeffs, want);
        assert_eq!(q.self_intersection[0].coeff(4), qr(25, 788299776));
        let f = final_class(&d, &[(qi(-126), qi(0))]).unwrap();
        assert_eq!(f.line_square, qr(-7, 2));
        assert_eq!(
            f.scaled(337920),
            [880, 0, 1760, -3520, 4928, -1408, 0, 0].map(qi).to_vec()
        );
        assert!(final_class(&d, &[]).is_err());
    }
}
