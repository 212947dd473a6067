//! Dense univariate polynomials over `Q`, with exact rational root finding,
//! interpolation and resultants of bivariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_q, qb, qi, Q};
use crate::{Error, Result};

/// `Σ coeffs[i] t^i`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Q>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&k| qi(k)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Q::one())
    }

    pub fn constant(k: Q) -> Self {
        UPoly::new(vec![k])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        UPoly::new(vec![Q::zero(), Q::one()])
    }

    /// `t - r`.
    pub fn linear_root(r: &Q) -> Self {
        UPoly::new(vec![-r.clone(), Q::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, t: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn scale(&self, k: &Q) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(t)^k`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = UPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * qi(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    /// Euclidean division.
    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quot[shift] = c;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((UPoly::new(quot), UPoly::new(rem)))
    }

    /// Monic gcd; zero when both inputs vanish.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd is nonzero").0.monic()
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * qb(den.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        let sign = if ints.last().is_some_and(Signed::is_negative) {
            -1
        } else {
            1
        };
        ints.into_iter().map(|c| c / &content * sign).collect()
    }

    fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero").1;
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    fn sign_changes(seq: &[UPoly], t: &Q) -> usize {
        let signs: Vec<i8> = seq
            .iter()
            .map(|p| {
                let v = p.eval(t);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Q {
        let lead = self.leading().abs();
        let m = self
            .coeffs
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Q::zero);
        m + Q::one()
    }

    /// All rational roots, sorted, without multiplicity.
    ///
    /// Real roots of the squarefree part are isolated with a Sturm sequence
    /// and narrowed until `|lead|·root` is pinned to one integer candidate.
    pub fn rational_roots(&self) -> Vec<Q> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let sf = self.squarefree_part();
        let prim = sf.primitive();
        let lead = qb(prim.last().expect("nonconstant").abs());
        let sf = UPoly::new(prim.into_iter().map(qb).collect());
        let seq = sf.sturm_sequence();
        let bound = sf.root_bound();
        let count = |a: &Q, b: &Q| {
            UPoly::sign_changes(&seq, a).saturating_sub(UPoly::sign_changes(&seq, b))
        };
        let mut stack = vec![(-bound.clone(), bound)];
        let mut roots = Vec::new();
        let width = Q::one() / (qi(2) * &lead);
        while let Some((a, b)) = stack.pop() {
            let c = count(&a, &b);
            if c == 0 {
                continue;
            }
            if c > 1 {
                let mid = (&a + &b) / qi(2);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
                continue;
            }
            // one root in (a, b]; narrow it
            let (mut lo, mut hi) = (a, b);
            while &hi - &lo > width {
                let mid = (&lo + &hi) / qi(2);
                if count(&lo, &mid) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let scaled_lo = (&lo * &lead).ceil();
            let scaled_hi = (&hi * &lead).floor();
            let mut m = scaled_lo;
            while m <= scaled_hi {
                let cand = &m / &lead;
                if sf.eval(&cand).is_zero() {
                    roots.push(cand);
                }
                m += Q::one();
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }

    /// Lagrange interpolation through distinct nodes.
    pub fn interpolate(points: &[(Q, Q)]) -> Result<UPoly> {
        let mut out = UPoly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = UPoly::one();
            let mut den = Q::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    if xi == xj {
                        return Err(Error::InvalidArgument(format!(
                            "repeated interpolation node {}",
                            format_q(xi)
                        )));
                    }
                    basis = &basis * &UPoly::linear_root(xj);
                    den *= xi - xj;
                }
            }
            out = &out + &basis.scale(&(yi / den));
        }
        Ok(out)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", format_q(&a))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

/// Polynomial in two variables `(s, t)` stored as `Σ_i c_i(t) s^i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<UPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(UPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// From `(i, j, c)` triples meaning `c s^i t^j`.
    pub fn from_terms(terms: &[(usize, usize, Q)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().map_or(0, |d| d + 1);
        let mut rows = vec![Vec::<Q>::new(); deg];
        for (i, j, c) in terms {
            if rows[*i].len() <= *j {
                rows[*i].resize(j + 1, Q::zero());
            }
            rows[*i][*j] += c;
        }
        BiPoly::new(rows.into_iter().map(UPoly::new).collect())
    }

    pub fn degree_s(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs_s(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn eval(&self, s: &Q, t: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c.eval(t);
        }
        acc
    }

    /// The univariate polynomial in `s` at a fixed `t`.
    pub fn at_t(&self, t: &Q) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c.eval(t)).collect())
    }

    /// `Res_s(self, other)` as a polynomial in `t`, via the Sylvester matrix.
    pub fn resultant_s(&self, other: &BiPoly) -> Result<UPoly> {
        let (m, n) = match (self.degree_s(), other.degree_s()) {
            (Some(m), Some(n)) if m + n > 0 => (m, n),
            _ => {
                return Err(Error::InvalidArgument(
                    "resultant needs nonzero inputs of positive total s-degree".into(),
                ))
            }
        };
        let size = m + n;
        let mut rows = vec![vec![UPoly::zero(); size]; size];
        for r in 0..n {
            for (i, c) in self.coeffs.iter().rev().enumerate() {
                rows[r][r + i] = c.clone();
            }
        }
        for r in 0..m {
            for (i, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + r][r + i] = c.clone();
            }
        }
        Ok(poly_det(&rows))
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(m: &[Vec<UPoly>]) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UPoly::zero();
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<UPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = a * &poly_det(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Common rational zeros of bivariate polynomials, sorted by `(s, t)`.
///
/// Candidate `t` values are the rational roots of the gcd of the pairwise
/// resultants with the first polynomial; for each, `s` ranges over the
/// rational roots of the gcd of the specialized polynomials.
pub fn common_rational_zeros(polys: &[BiPoly]) -> Result<Vec<(Q, Q)>> {
    let (first, rest) = polys
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("no polynomials".into()))?;
    if rest.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least two polynomials".into(),
        ));
    }
    let mut g = UPoly::zero();
    for p in rest {
        g = g.gcd(&first.resultant_s(p)?);
    }
    if g.is_zero() {
        return Err(Error::Domain(
            "the polynomials share a common factor".into(),
        ));
    }
    let mut out = Vec::new();
    for t in g.rational_roots() {
        let mut h = UPoly::zero();
        for p in polys {
            h = h.gcd(&p.at_t(&t));
        }
        for s in h.rational_roots() {
            out.push((s, t.clone()));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use proptest::prelude::*;

    #[test]
    fn arithmetic_and_division() {
        let p = UPoly::from_ints(&[-1, 0, 1]);
        let q = UPoly::from_ints(&[1, 1]);
        let (d, r) = p.div_rem(&q).unwrap();
        assert_eq!(d, UPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(
            p.gcd(&UPoly::from_ints(&[-1, 1])),
            UPoly::from_ints(&[-1, 1])
        );
        assert_eq!(p.to_string(), "t^2 - 1");
        assert!(p.div_rem(&UPoly::zero()).is_err());
    }

    #[test]
    fn rational_roots_with_multiplicity_and_irrational_factors() {
        // (t - 3/4)^2 (t + 5) (t^2 - 2)
        let p = &(&UPoly::linear_root(&qr(3, 4)).pow(2) * &UPoly::linear_root(&qi(-5)))
            * &UPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(p.rational_roots(), vec![qi(-5), qr(3, 4)]);
        assert!(UPoly::from_ints(&[1, 0, 1]).rational_roots().is_empty());
        assert_eq!(UPoly::from_ints(&[0, 1]).rational_roots(), vec![qi(0)]);
    }

    #[test]
    fn close_roots_are_separated() {
        let p = &UPoly::linear_root(&qr(1000, 1001)) * &UPoly::linear_root(&qr(1001, 1002));
        assert_eq!(p.rational_roots(), vec![qr(1000, 1001), qr(1001, 1002)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UPoly::new(vec![qr(1, 3), qi(-2), qi(0), qr(7, 5)]);
        let pts: Vec<(Q, Q)> = (0..4).map(|i| (qi(i), p.eval(&qi(i)))).collect();
        assert_eq!(UPoly::interpolate(&pts).unwrap(), p);
        assert!(UPoly::interpolate(&[(qi(1), qi(1)), (qi(1), qi(2))]).is_err());
    }

    #[test]
    fn resultant_and_common_zeros() {
        // s^2 + t^2 - 5 and s - 2t meet at (±2, ±1); add s t - 2 to keep (2, 1) and (-2, -1)
        let circle = BiPoly::from_terms(&[(2, 0, qi(1)), (0, 2, qi(1)), (0, 0, qi(-5))]);
        let line = BiPoly::from_terms(&[(1, 0, qi(1)), (0, 1, qi(-2))]);
        let hyper = BiPoly::from_terms(&[(1, 1, qi(1)), (0, 0, qi(-2))]);
        let r = circle.resultant_s(&line).unwrap();
        assert_eq!(r.monic(), UPoly::from_ints(&[-1, 0, 1]));
        let z = common_rational_zeros(&[circle, line, hyper]).unwrap();
        assert_eq!(z, vec![(qi(-2), qi(-1)), (qi(2), qi(1))]);
    }

    proptest! {
        #[test]
        fn planted_rational_roots_are_found(
            roots in proptest::collection::vec((-40i64..40, 1i64..12), 1..5),
            extra in 1i64..6,
        ) {
            let mut p = UPoly::from_ints(&[extra, 0, 1]);
            let mut want: Vec<Q> = Vec::new();
            for (a, b) in &roots {
                let r = qr(*a, *b);
                p = &p * &UPoly::linear_root(&r);
                want.push(r);
            }
            want.sort();
            want.dedup();
            prop_assert_eq!(p.rational_roots(), want);
        }

        #[test]
        fn division_identity(
            a in proptest::collection::vec(-9i64..9, 1..7),
            b in proptest::collection::vec(-9i64..9, 1..4),
        ) {
            let a = UPoly::from_ints(&a);
            let b = UPoly::from_ints(&b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
