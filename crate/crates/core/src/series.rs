//! Truncated power series and polynomials in formal genus coefficients.
//!
//! [`APoly`] is a sparse polynomial in `a_1, …, a_8` where `a_i` has weight
//! `i`; products drop everything above weight [`APOLY_MAX_WEIGHT`].
//! [`TruncSeries`] is a power series in one variable truncated at a fixed
//! order, over any [`Coeff`] ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{format_q, qi, Q};
use crate::Error;

/// Number of formal coefficients `a_1..a_8`.
pub const APOLY_VARS: usize = 8;
/// Highest retained weighted degree.
pub const APOLY_MAX_WEIGHT: u32 = 8;
/// Truncation order of generating series in `z`.
pub const Z_ORDER: usize = 4;

/// Commutative ring of series coefficients with a rational scalar action.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, k: &Q) -> Self;
    /// Constant term, i.e. the image under `a_i -> 0`.
    fn constant(&self) -> Q;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&qi(-1)))
    }

    fn from_q(k: &Q) -> Self {
        Self::one().scale(k)
    }
}

impl Coeff for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, k: &Q) -> Self {
        self * k
    }
    fn constant(&self) -> Q {
        self.clone()
    }
}

/// Exponent vector of an `a`-monomial; index `i` holds the power of `a_{i+1}`.
pub type AMonomial = [u8; APOLY_VARS];

/// Weighted degree of an `a`-monomial.
pub fn a_weight(m: &AMonomial) -> u32 {
    m.iter()
        .enumerate()
        .map(|(i, &e)| (i as u32 + 1) * e as u32)
        .sum()
}

/// Sparse polynomial in `a_1..a_8`, truncated at weight 8.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct APoly {
    terms: BTreeMap<AMonomial, Q>,
}

impl APoly {
    pub fn zero() -> Self {
        APoly::default()
    }

    pub fn constant(k: Q) -> Self {
        let mut p = APoly::zero();
        p.add_term([0; APOLY_VARS], k);
        p
    }

    /// The generator `a_i`, `1 <= i <= 8`.
    pub fn var(i: usize) -> Self {
        assert!((1..=APOLY_VARS).contains(&i), "a_{i} out of range");
        let mut m = [0u8; APOLY_VARS];
        m[i - 1] = 1;
        APoly::monomial(m, qi(1))
    }

    pub fn monomial(m: AMonomial, k: Q) -> Self {
        let mut p = APoly::zero();
        p.add_term(m, k);
        p
    }

    /// Parses sums like `2*a1^4 - 8*a1^2*a2 + 1/48`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let bad = |what: &str| Error::Parse(format!("bad a-polynomial {s:?}: {what}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = APoly::zero();
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms.into_iter().filter(|t| !t.is_empty()) {
            let (sign, body) = match t.strip_prefix('-') {
                Some(rest) => (qi(-1), rest.to_string()),
                None => (qi(1), t.trim_start_matches('+').to_string()),
            };
            let mut coef = sign;
            let mut mono = [0u8; APOLY_VARS];
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix('a') {
                    let (idx, pow) = match var.split_once('^') {
                        Some((i, p)) => (i, p.parse::<u8>().map_err(|_| bad("power"))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("index"))?;
                    if !(1..=APOLY_VARS).contains(&idx) {
                        return Err(bad("index out of range"));
                    }
                    mono[idx - 1] += pow;
                } else {
                    coef *= crate::rational::parse_q(factor)?;
                }
            }
            out.add_term(mono, coef);
        }
        Ok(out)
    }

    pub fn add_term(&mut self, m: AMonomial, k: Q) {
        if Zero::is_zero(&k) || a_weight(&m) > APOLY_MAX_WEIGHT {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(k);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += k;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &AMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(|| qi(0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Part of weighted degree exactly `w`.
    pub fn homogeneous_part(&self, w: u32) -> APoly {
        APoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| a_weight(m) == w)
                .map(|(m, k)| (*m, k.clone()))
                .collect(),
        }
    }

    /// Largest weighted degree present, `None` for zero.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(a_weight).max()
    }

    pub fn is_homogeneous_of(&self, w: u32) -> bool {
        self.terms.keys().all(|m| a_weight(m) == w)
    }
}

impl Coeff for APoly {
    fn zero() -> Self {
        APoly::zero()
    }
    fn one() -> Self {
        APoly::constant(qi(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, k) in &other.terms {
            out.add_term(*m, k.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = APoly::zero();
        for (m1, k1) in &self.terms {
            let w1 = a_weight(m1);
            for (m2, k2) in &other.terms {
                if w1 + a_weight(m2) > APOLY_MAX_WEIGHT {
                    continue;
                }
                let mut m = *m1;
                for (e, f) in m.iter_mut().zip(m2) {
                    *e += f;
                }
                out.add_term(m, k1 * k2);
            }
        }
        out
    }
    fn scale(&self, k: &Q) -> Self {
        if Zero::is_zero(k) {
            return APoly::zero();
        }
        APoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }
    fn constant(&self) -> Q {
        self.coefficient(&[0; APOLY_VARS])
    }
}

impl Add for &APoly {
    type Output = APoly;
    fn add(self, rhs: &APoly) -> APoly {
        Coeff::add(self, rhs)
    }
}

impl Sub for &APoly {
    type Output = APoly;
    fn sub(self, rhs: &APoly) -> APoly {
        Coeff::sub(self, rhs)
    }
}

impl Mul for &APoly {
    type Output = APoly;
    fn mul(self, rhs: &APoly) -> APoly {
        Coeff::mul(self, rhs)
    }
}

impl Neg for &APoly {
    type Output = APoly;
    fn neg(self) -> APoly {
        self.scale(&qi(-1))
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest weight first
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|(m, _)| std::cmp::Reverse((a_weight(m), **m)));
        for (idx, (m, k)) in items.into_iter().enumerate() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("a{}", i + 1)
                    } else {
                        format!("a{}^{}", i + 1, e)
                    }
                })
                .collect();
            let neg = k < &qi(0);
            let mag = if neg { -k.clone() } else { k.clone() };
            let sep = match (idx, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sep}")?;
            if vars.is_empty() {
                write!(f, "{}", format_q(&mag))?;
            } else if mag == qi(1) {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_q(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "APoly({self})")
    }
}

/// Power series `c_0 + c_1 t + … + c_N t^N + O(t^{N+1})`.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C: Coeff> {
    coeffs: Vec<C>,
}

/// Series in `z` truncated after `z^4`.
pub type ZSeries<C> = TruncSeries<C>;

impl<C: Coeff> TruncSeries<C> {
    /// Series with the given coefficients; `order` is the highest kept power.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        coeffs.truncate(order + 1);
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one()], order)
    }

    /// The series variable itself.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![C::zero(), C::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<(), Error> {
        if self.order() != other.order() {
            return Err(Error::Shape(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_order(other)?;
        Ok(TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn scale(&self, k: &Q) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `log s` for `s` with constant term 1.
    pub fn log(&self) -> Result<Self, Error> {
        if self.coeffs[0] != C::one() {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        // log(1 + f) = sum_{k>=1} (-1)^{k+1} f^k / k
        let f = self.without_constant();
        let mut power = f.clone();
        let mut acc = Self::zero(self.order());
        for k in 1..=self.order() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&Q::new(sign.into(), (k as i64).into())))?;
            power = power.mul(&f)?;
        }
        Ok(acc)
    }

    /// `exp s` for `s` with constant term 0.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("exp needs constant term 0".into()));
        }
        let mut term = Self::one(self.order());
        let mut acc = Self::one(self.order());
        for k in 1..=self.order() {
            term = term.mul(self)?.scale(&Q::new(1.into(), (k as i64).into()));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// `s^r = exp(r log s)` for rational `r` and constant term 1.
    pub fn pow(&self, r: &Q) -> Result<Self, Error> {
        if self.coeffs[0] != C::one() {
            return Err(Error::Domain("rational power needs constant term 1".into()));
        }
        self.log()?.scale(r).exp()
    }

    fn without_constant(&self) -> Self {
        let mut c = self.coeffs.clone();
        c[0] = C::zero();
        TruncSeries { coeffs: c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn a(i: usize) -> APoly {
        APoly::var(i)
    }

    #[test]
    fn apoly_truncation_and_products() {
        assert_eq!(
            &a(1) * &a(1),
            APoly::monomial([2, 0, 0, 0, 0, 0, 0, 0], qi(1))
        );
        assert!(Coeff::is_zero(&(&(&a(4) * &a(4)) * &a(1))));
        assert_eq!((&a(4) * &a(4)).max_weight(), Some(8));
    }

    #[test]
    fn apoly_parse_and_display() {
        let p = APoly::parse("2*a1^4 - 8*a1^2*a2 - 5/4*a1^2 + 1/48").unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.constant(), qr(1, 48));
        let again = APoly::parse(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn series_log_exp_and_roots() {
        let s = TruncSeries::new(vec![qi(1), qr(2, 3), qi(-5), qr(1, 7), qi(2)], Z_ORDER);
        assert_eq!(s.log().unwrap().exp().unwrap(), s);
        assert_eq!(s.pow(&qi(1)).unwrap(), s);
        let cube = s.mul(&s).unwrap().mul(&s).unwrap();
        assert_eq!(cube.pow(&qr(1, 3)).unwrap(), s);
        assert!(TruncSeries::new(vec![qi(2)], 4).log().is_err());
        assert!(TruncSeries::new(vec![qi(1)], 4).exp().is_err());
    }

    #[test]
    fn apoly_series_log_is_additive() {
        let s = TruncSeries::new(vec![APoly::one(), a(1), a(2)], 4);
        let t = TruncSeries::new(vec![APoly::one(), a(2), a(1)], 4);
        let lhs = s.mul(&t).unwrap().log().unwrap();
        let rhs = s.log().unwrap().add(&t.log().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
