//! The graded Frobenius algebra `A = H*(S, Q)[2]` of a K3 surface.
//!
//! The basis is indexed by a [`Label`]: `0` is the unit `u` (shifted degree
//! −2), `1..=22` are the middle classes `e_1..e_22` (degree 0) and `23` is the
//! point class `p` (degree 2). The counit is `T = -∫_S`, so `T(p) = -1`.
//! Comultiplication is derived from adjointness against `T ∘ m` and then
//! checked against its closed form.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg::RatMatrix;
use crate::rational::{qi, to_i64, Q};
use crate::{ensure, Error, Result};

/// Index into the 24-element basis of `A`.
pub type Label = u8;

pub const UNIT: Label = 0;
pub const POINT: Label = 23;
pub const MIDDLE_RANK: usize = 22;
pub const BASIS_LEN: usize = 24;
/// Largest tensor rank for which comultiplication tables are cached.
pub const MAX_COMUL_RANK: usize = 5;

/// Label of the middle class `e_j`, `0 <= j < 22`.
pub fn middle(j: usize) -> Label {
    assert!(j < MIDDLE_RANK);
    (j + 1) as Label
}

/// Shifted degree of a basis element.
pub fn label_degree(l: Label) -> i32 {
    match l {
        UNIT => -2,
        POINT => 2,
        _ => 0,
    }
}

pub fn label_name(l: Label) -> String {
    match l {
        UNIT => "1".into(),
        POINT => "pt".into(),
        j => format!("e{j}"),
    }
}

/// `H^2(S, Z)` with its intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleLattice {
    gram: Vec<i64>,
    gram_inverse: RatMatrix,
    gram_inverse_int: Vec<i64>,
}

const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

impl MiddleLattice {
    /// Validates evenness, unimodularity and signature (3, 19).
    pub fn new(gram: Vec<i64>) -> Result<Self> {
        let n = MIDDLE_RANK;
        if gram.len() != n * n {
            return Err(Error::Shape(format!("gram has {} entries", gram.len())));
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i * n + j] != gram[j * n + i] {
                    return Err(Error::InvalidArgument("gram is not symmetric".into()));
                }
            }
            if gram[i * n + i] % 2 != 0 {
                return Err(Error::InvalidArgument("gram is not even".into()));
            }
        }
        let m = RatMatrix::from_fn(n, n, |i, j| qi(gram[i * n + j]));
        let det = m.det()?;
        if det != qi(1) && det != qi(-1) {
            return Err(Error::InvalidArgument(format!(
                "gram determinant {det} is not ±1"
            )));
        }
        let (pos, neg) = inertia(&m);
        if (pos, neg) != (3, 19) {
            return Err(Error::InvalidArgument(format!(
                "signature ({pos}, {neg}) is not (3, 19)"
            )));
        }
        let gram_inverse = m.inverse()?;
        let gram_inverse_int = (0..n * n)
            .map(|k| to_i64(&gram_inverse[(k / n, k % n)]).expect("unimodular inverse is integral"))
            .collect();
        Ok(MiddleLattice {
            gram,
            gram_inverse,
            gram_inverse_int,
        })
    }

    /// Three hyperbolic planes and two copies of `E8(-1)`.
    pub fn k3() -> Self {
        let n = MIDDLE_RANK;
        let mut g = vec![0i64; n * n];
        for b in 0..3 {
            let i = 2 * b;
            g[i * n + i + 1] = 1;
            g[(i + 1) * n + i] = 1;
        }
        for block in 0..2 {
            let off = 6 + 8 * block;
            for k in 0..8 {
                g[(off + k) * n + off + k] = -2;
            }
            for &(a, b) in &E8_EDGES {
                g[(off + a) * n + off + b] = 1;
                g[(off + b) * n + off + a] = 1;
            }
        }
        MiddleLattice::new(g).expect("standard K3 lattice")
    }

    /// The same lattice in the basis given by the columns of `p`
    /// (a 22×22 unimodular integer matrix): `gram' = pᵀ gram p`.
    pub fn change_basis(&self, p: &[i64]) -> Result<Self> {
        let n = MIDDLE_RANK;
        if p.len() != n * n {
            return Err(Error::Shape("change of basis must be 22x22".into()));
        }
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for a in 0..n {
                    if p[a * n + i] == 0 {
                        continue;
                    }
                    for b in 0..n {
                        s += p[a * n + i] * self.gram[a * n + b] * p[b * n + j];
                    }
                }
                out[i * n + j] = s;
            }
        }
        MiddleLattice::new(out)
    }

    /// A second Gram matrix for the same lattice, obtained from [`Self::k3`]
    /// by a fixed unimodular change of basis that mixes the hyperbolic and
    /// `E8` summands.
    pub fn k3_alternate() -> Self {
        let n = MIDDLE_RANK;
        let mut p = vec![0i64; n * n];
        for i in 0..n {
            p[i * n + i] = 1;
        }
        for &(r, c, v) in &[
            (0usize, 7usize, 1i64),
            (9, 1, -1),
            (3, 15, 2),
            (20, 4, 1),
            (12, 13, 1),
        ] {
            p[r * n + c] = v;
        }
        MiddleLattice::k3()
            .change_basis(&p)
            .expect("unimodular change of basis")
    }

    pub fn gram(&self, i: usize, j: usize) -> i64 {
        self.gram[i * MIDDLE_RANK + j]
    }

    pub fn gram_inverse(&self) -> &RatMatrix {
        &self.gram_inverse
    }

    pub fn gram_inverse_int(&self, i: usize, j: usize) -> i64 {
        self.gram_inverse_int[i * MIDDLE_RANK + j]
    }

    /// Nonzero entries `(k, gram[j][k])` of row `j`.
    pub fn gram_row(&self, j: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        (0..MIDDLE_RANK)
            .map(move |k| (k, self.gram(j, k)))
            .filter(|(_, v)| *v != 0)
    }

    /// Nonzero entries `(k, gram⁻¹[j][k])` of row `j`.
    pub fn gram_inverse_row(&self, j: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        (0..MIDDLE_RANK)
            .map(move |k| (k, self.gram_inverse_int(j, k)))
            .filter(|(_, v)| *v != 0)
    }
}

impl Default for MiddleLattice {
    fn default() -> Self {
        MiddleLattice::k3()
    }
}

/// Counts of positive and negative squares of a symmetric rational matrix.
pub fn inertia(m: &RatMatrix) -> (usize, usize) {
    let n = m.rows();
    let mut a = m.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        // find a nonzero diagonal entry, or create one from an off-diagonal pair
        let piv = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero());
                let Some((i, j)) = pair else {
                    break;
                };
                // row_i += row_j, col_i += col_j
                for k in 0..n {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for k in 0..n {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                i
            }
        };
        let _ = first;
        let d = a[(piv, piv)].clone();
        if d > Q::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        for &i in &active {
            if i == piv || a[(i, piv)].is_zero() {
                continue;
            }
            let f = &a[(i, piv)] / &d;
            for &k in &active {
                let v = &f * &a[(piv, k)];
                a[(i, k)] -= v;
            }
            for &k in &active {
                let v = &f * &a[(k, piv)];
                a[(k, i)] -= v;
            }
        }
        active.retain(|&i| i != piv);
    }
    (pos, neg)
}

/// Homogeneous or mixed degree of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Pure(i32),
    Mixed,
}

/// Degree of a collection of (degree, is-nonzero) items.
pub(crate) fn combine_degrees(degrees: impl Iterator<Item = i32>) -> Degree {
    let mut out = Degree::Zero;
    for d in degrees {
        out = match out {
            Degree::Zero => Degree::Pure(d),
            Degree::Pure(e) if e == d => Degree::Pure(e),
            _ => return Degree::Mixed,
        };
    }
    out
}

/// Element of `A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K3Class {
    coeffs: BTreeMap<Label, Q>,
}

impl K3Class {
    pub fn zero() -> Self {
        K3Class::default()
    }

    pub fn basis(l: Label) -> Self {
        K3Class::zero().plus(l, Q::one())
    }

    pub fn unit() -> Self {
        K3Class::basis(UNIT)
    }

    pub fn point() -> Self {
        K3Class::basis(POINT)
    }

    /// `self + k * b_l`.
    pub fn plus(mut self, l: Label, k: Q) -> Self {
        assert!((l as usize) < BASIS_LEN);
        let e = self.coeffs.entry(l).or_insert_with(Q::zero);
        *e += k;
        if e.is_zero() {
            self.coeffs.remove(&l);
        }
        self
    }

    pub fn coefficient(&self, l: Label) -> Q {
        self.coeffs.get(&l).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Label, &Q)> {
        self.coeffs.iter().map(|(l, k)| (*l, k))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &Q) -> Self {
        self.terms()
            .fold(K3Class::zero(), |acc, (l, c)| acc.plus(l, c * k))
    }

    pub fn add(&self, other: &K3Class) -> Self {
        other
            .terms()
            .fold(self.clone(), |acc, (l, c)| acc.plus(l, c.clone()))
    }

    pub fn degree(&self) -> Degree {
        combine_degrees(self.coeffs.keys().map(|&l| label_degree(l)))
    }
}

/// Element of `A^{⊗r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorClass {
    rank: usize,
    coeffs: BTreeMap<Vec<Label>, Q>,
}

impl TensorClass {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1);
        TensorClass {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, labels: Vec<Label>, k: Q) {
        assert_eq!(labels.len(), self.rank);
        if k.is_zero() {
            return;
        }
        let e = self.coeffs.entry(labels.clone()).or_insert_with(Q::zero);
        *e += k;
        if e.is_zero() {
            self.coeffs.remove(&labels);
        }
    }

    pub fn coefficient(&self, labels: &[Label]) -> Q {
        self.coeffs.get(labels).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Label>, &Q)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// One term of a cached comultiplication: labels and an integer coefficient.
pub type ComulTerm = (Vec<Label>, i64);

/// The algebra `A` over a chosen middle lattice.
#[derive(Clone, Debug)]
pub struct FrobeniusAlgebra {
    lattice: MiddleLattice,
    /// `comul[r-1][x]` lists the terms of `Δ[r](b_x)`.
    comul: Vec<Vec<Vec<ComulTerm>>>,
}

impl FrobeniusAlgebra {
    pub fn new(lattice: MiddleLattice) -> Result<Self> {
        let mut alg = FrobeniusAlgebra {
            lattice,
            comul: Vec::new(),
        };
        let delta2 = alg.comul2_by_adjointness()?;
        alg.check_comul2_closed_form(&delta2)?;
        let mut table: Vec<Vec<Vec<ComulTerm>>> = Vec::with_capacity(MAX_COMUL_RANK);
        table.push(
            (0..BASIS_LEN)
                .map(|x| vec![(vec![x as Label], 1)])
                .collect(),
        );
        table.push(delta2);
        for r in 3..=MAX_COMUL_RANK {
            // Δ[r] = (Δ[r-1] ⊗ id) ∘ Δ
            let prev = &table[r - 2];
            let two = &table[1];
            let mut level = Vec::with_capacity(BASIS_LEN);
            for x in 0..BASIS_LEN {
                let mut acc: BTreeMap<Vec<Label>, i64> = BTreeMap::new();
                for (lk, c) in &two[x] {
                    for (head, d) in &prev[lk[0] as usize] {
                        let mut key = head.clone();
                        key.push(lk[1]);
                        *acc.entry(key).or_insert(0) += c * d;
                    }
                }
                level.push(acc.into_iter().filter(|(_, v)| *v != 0).collect());
            }
            table.push(level);
        }
        alg.comul = table;
        Ok(alg)
    }

    pub fn k3() -> Self {
        FrobeniusAlgebra::new(MiddleLattice::k3()).expect("K3 Frobenius algebra")
    }

    pub fn lattice(&self) -> &MiddleLattice {
        &self.lattice
    }

    /// Product of basis elements as `(label, integer coefficient)`.
    #[inline]
    pub fn mul_basis(&self, a: Label, b: Label) -> Option<(Label, i64)> {
        match (a, b) {
            (UNIT, x) | (x, UNIT) => Some((x, 1)),
            (POINT, _) | (_, POINT) => None,
            (i, j) => {
                let g = self.lattice.gram(i as usize - 1, j as usize - 1);
                (g != 0).then_some((POINT, g))
            }
        }
    }

    pub fn mul(&self, x: &K3Class, y: &K3Class) -> K3Class {
        let mut out = K3Class::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                if let Some((l, k)) = self.mul_basis(a, b) {
                    out = out.plus(l, ca * cb * qi(k));
                }
            }
        }
        out
    }

    /// `T = -∫_S`.
    pub fn counit(&self, x: &K3Class) -> Q {
        -x.coefficient(POINT)
    }

    /// `T(b_a · b_b)` as an integer.
    #[inline]
    pub fn pairing_basis(&self, a: Label, b: Label) -> i64 {
        match self.mul_basis(a, b) {
            Some((POINT, k)) => -k,
            _ => 0,
        }
    }

    /// The 24×24 matrix `T(b_i b_j)`.
    pub fn pairing_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(BASIS_LEN, BASIS_LEN, |i, j| {
            qi(self.pairing_basis(i as Label, j as Label))
        })
    }

    /// `e_j^∨ = Σ_k gram⁻¹[j][k] e_k`.
    pub fn middle_dual(&self, j: usize) -> K3Class {
        self.lattice
            .gram_inverse_row(j)
            .fold(K3Class::zero(), |acc, (k, v)| acc.plus(middle(k), qi(v)))
    }

    /// Euler class `e = m ∘ Δ(1)`, which equals `-24 p`.
    pub fn euler(&self) -> K3Class {
        let mut out = K3Class::zero();
        for (labels, c) in &self.comul[1][UNIT as usize] {
            if let Some((l, k)) = self.mul_basis(labels[0], labels[1]) {
                out = out.plus(l, qi(c * k));
            }
        }
        out
    }

    /// Cached terms of `Δ[r](b_x)` for `1 <= r <= 5`.
    #[inline]
    pub fn comul_terms(&self, x: Label, r: usize) -> &[ComulTerm] {
        &self.comul[r - 1][x as usize]
    }

    /// `Δ[r](x)`; `r = 1` is the identity.
    pub fn comul_n(&self, x: &K3Class, r: usize) -> Result<TensorClass> {
        if r == 0 {
            return Err(Error::InvalidArgument(
                "comultiplication rank must be >= 1".into(),
            ));
        }
        let mut out = TensorClass::zero(r);
        if r <= MAX_COMUL_RANK {
            for (l, c) in x.terms() {
                for (labels, k) in self.comul_terms(l, r) {
                    out.add_term(labels.clone(), c * qi(*k));
                }
            }
            return Ok(out);
        }
        let prev = self.comul_n(x, r - 1)?;
        for (labels, c) in prev.terms() {
            let (last, head) = labels.split_last().expect("rank >= 1");
            for (pair, k) in self.comul_terms(*last, 2) {
                let mut key = head.to_vec();
                key.extend_from_slice(pair);
                out.add_term(key, c * qi(*k));
            }
        }
        Ok(out)
    }

    /// `Δ(b_x) = Σ c_kl b_k ⊗ b_l` with `c = P⁻¹ M_x P⁻¹`, where `P` is the
    /// pairing matrix and `M_x[y][z] = T(b_x b_y b_z)`.
    fn comul2_by_adjointness(&self) -> Result<Vec<Vec<ComulTerm>>> {
        let p_inv = self.pairing_matrix().inverse()?;
        let mut out = Vec::with_capacity(BASIS_LEN);
        for x in 0..BASIS_LEN as Label {
            let m = RatMatrix::from_fn(BASIS_LEN, BASIS_LEN, |y, z| {
                let xy = self.mul(&K3Class::basis(x), &K3Class::basis(y as Label));
                let xyz = self.mul(&xy, &K3Class::basis(z as Label));
                self.counit(&xyz)
            });
            let c = &(&p_inv * &m) * &p_inv;
            let mut terms = Vec::new();
            for k in 0..BASIS_LEN {
                for l in 0..BASIS_LEN {
                    let v = &c[(k, l)];
                    if !v.is_zero() {
                        let iv = to_i64(v).ok_or_else(|| {
                            Error::CheckFailed("comultiplication has non-integral entries".into())
                        })?;
                        terms.push((vec![k as Label, l as Label], iv));
                    }
                }
            }
            out.push(terms);
        }
        Ok(out)
    }

    /// `Δ(1) = -Σ e_j ⊗ e_j^∨ - p⊗1 - 1⊗p`, `Δ(e_j) = -e_j⊗p - p⊗e_j`,
    /// `Δ(p) = -p⊗p`.
    fn check_comul2_closed_form(&self, delta: &[Vec<ComulTerm>]) -> Result<()> {
        let as_map =
            |terms: &[ComulTerm]| -> BTreeMap<Vec<Label>, i64> { terms.iter().cloned().collect() };
        let mut unit = BTreeMap::new();
        for j in 0..MIDDLE_RANK {
            for (k, v) in self.lattice.gram_inverse_row(j) {
                *unit.entry(vec![middle(j), middle(k)]).or_insert(0) -= v;
            }
        }
        unit.insert(vec![POINT, UNIT], -1);
        unit.insert(vec![UNIT, POINT], -1);
        unit.retain(|_, v| *v != 0);
        ensure(as_map(&delta[UNIT as usize]) == unit, || {
            "Δ(1) differs from -Σ e_j⊗e_j^∨ - p⊗1 - 1⊗p".into()
        })?;
        for j in 0..MIDDLE_RANK {
            let e = middle(j);
            let expected: BTreeMap<Vec<Label>, i64> = [(vec![e, POINT], -1), (vec![POINT, e], -1)]
                .into_iter()
                .collect();
            ensure(as_map(&delta[e as usize]) == expected, || {
                format!("Δ(e_{}) differs from -e⊗p - p⊗e", j + 1)
            })?;
        }
        let expected: BTreeMap<Vec<Label>, i64> = [(vec![POINT, POINT], -1)].into_iter().collect();
        ensure(as_map(&delta[POINT as usize]) == expected, || {
            "Δ(p) differs from -p⊗p".into()
        })
    }
}

impl Default for FrobeniusAlgebra {
    fn default() -> Self {
        FrobeniusAlgebra::k3()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RatMatrix;

    #[test]
    fn k3_lattice_invariants() {
        let l = MiddleLattice::k3();
        let g = RatMatrix::from_fn(22, 22, |i, j| qi(l.gram(i, j)));
        assert_eq!(&g * l.gram_inverse(), RatMatrix::identity(22));
        assert_eq!(inertia(&g), (3, 19));
        assert!(g.det().unwrap() == qi(1) || g.det().unwrap() == qi(-1));
    }

    #[test]
    fn lattice_validation_rejects_bad_grams() {
        let mut g = vec![0i64; 22 * 22];
        for i in 0..22 {
            g[i * 22 + i] = 2;
        }
        assert!(MiddleLattice::new(g.clone()).is_err());
        g[0] = 1;
        assert!(MiddleLattice::new(g).is_err());
    }

    #[test]
    fn products_and_counit() {
        let a = FrobeniusAlgebra::k3();
        assert_eq!(a.mul(&K3Class::unit(), &K3Class::point()), K3Class::point());
        assert!(a.mul(&K3Class::point(), &K3Class::point()).is_zero());
        let e1 = K3Class::basis(middle(0));
        assert_eq!(a.mul(&e1, &a.middle_dual(0)), K3Class::point());
        assert_eq!(a.counit(&K3Class::point()), qi(-1));
        assert_eq!(a.counit(&K3Class::unit()), qi(0));
        let x = K3Class::point()
            .scale(&qi(3))
            .add(&K3Class::unit().scale(&qi(-2)));
        assert_eq!(a.counit(&x), qi(-3));
    }

    #[test]
    fn euler_class() {
        let a = FrobeniusAlgebra::k3();
        assert_eq!(a.euler(), K3Class::point().scale(&qi(-24)));
        assert!(a.mul(&a.euler(), &K3Class::point()).is_zero());
    }

    #[test]
    fn comultiplication_of_point_and_rank_zero() {
        let a = FrobeniusAlgebra::k3();
        let t = a.comul_n(&K3Class::point(), 3).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.coefficient(&[POINT, POINT, POINT]), qi(1));
        assert!(a.comul_n(&K3Class::unit(), 0).is_err());
        let id = a.comul_n(&K3Class::basis(5), 1).unwrap();
        assert_eq!(id.coefficient(&[5]), qi(1));
    }

    #[test]
    fn triple_comultiplication_of_middle_class() {
        // Δ[3](e_j) = Σ over the three slots of p ⊗ p ⊗ e_j
        let a = FrobeniusAlgebra::k3();
        let e = middle(3);
        let t = a.comul_n(&K3Class::basis(e), 3).unwrap();
        assert_eq!(t.len(), 3);
        for slot in 0..3 {
            let mut key = vec![POINT; 3];
            key[slot] = e;
            assert_eq!(t.coefficient(&key), qi(1));
        }
    }

    #[test]
    fn triple_comultiplication_of_unit() {
        // Δ[3](1) = Σ (e_j)_a (e_j^∨)_b p_c + Σ p_a p_b 1_c
        let a = FrobeniusAlgebra::k3();
        let t = a.comul_n(&K3Class::unit(), 3).unwrap();
        assert_eq!(t.coefficient(&[POINT, POINT, UNIT]), qi(1));
        assert_eq!(t.coefficient(&[UNIT, POINT, POINT]), qi(1));
        let l = a.lattice();
        for j in 0..MIDDLE_RANK {
            for k in 0..MIDDLE_RANK {
                let v = qi(l.gram_inverse_int(j, k));
                assert_eq!(t.coefficient(&[middle(j), middle(k), POINT]), v);
                assert_eq!(t.coefficient(&[POINT, middle(j), middle(k)]), v);
            }
        }
    }

    #[test]
    fn pairing_is_nondegenerate() {
        let a = FrobeniusAlgebra::k3();
        assert_eq!(a.pairing_matrix().rank(), BASIS_LEN);
    }

    #[test]
    fn alternate_lattice_is_distinct() {
        let a = MiddleLattice::k3();
        let b = MiddleLattice::k3_alternate();
        assert_ne!(a, b);
    }
}
