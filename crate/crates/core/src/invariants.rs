//! Named invariant classes of `H*(S^[n])` for `n = 3, 4` and the
//! coordinate ring they generate.
//!
//! For `n = 4` the even cohomology up to degree 8 is spanned by
//!
//! | degree | classes |
//! |---|---|
//! | 2 | δ |
//! | 4 | W, X, Y, Z |
//! | 6 | P, Q, R, S, T |
//! | 8 | A, B, C, D, E, F, G, H |
//!
//! each the symmetrisation of a labelled partition. Every top-degree
//! number needed downstream is a product of four degree-4 classes, so
//! [`FourRing`] works with coordinate vectors over `W…Z`, a
//! multiplication table into `A…H` and the `A…H` Gram matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::frobenius::{middle, Degree, FrobeniusAlgebra, K3Class, MIDDLE_RANK};
use crate::hilb::{HilbRing, Key, LabelledPartition, SymElement};
use crate::linalg::RatMatrix;
use crate::rational::{format_q, qi, qr, Q};
use crate::upoly::{common_rational_zeros, BiPoly};
use crate::{ensure, Error, Result};

pub const DEG4_NAMES: [&str; 4] = ["W", "X", "Y", "Z"];
pub const DEG6_NAMES: [&str; 5] = ["P", "Q", "R", "S", "T"];
pub const DEG8_NAMES: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

/// Labelled partitions of the named classes of `H*(S^[4])`.
pub const FOUR_CLASSES: [(&str, &str); 18] = [
    ("delta", "{1}_2,{1,1}_1"),
    ("W", "{1}_3,{1}_1"),
    ("X", "{1,1}_2"),
    ("Y", "{1,1,1,pt}_1"),
    ("Z", "{1,1,e,e^}_1"),
    ("P", "{1}_4"),
    ("Q", "{pt}_2,{1,1}_1"),
    ("R", "{1}_2,{1,pt}_1"),
    ("S", "{e^}_2,{e,1}_1"),
    ("T", "{1}_2,{e,e^}_1"),
    ("A", "{e}_3,{e^}_1"),
    ("B", "{1}_3,{pt}_1"),
    ("C", "{pt}_3,{1}_1"),
    ("D", "{1,pt}_2"),
    ("E", "{e,e^}_2"),
    ("F", "{1,1,pt,pt}_1"),
    ("G", "{1,e,e^,pt}_1"),
    ("H", "{e,e,e^,e^}_1"),
];

/// `α = X - 3Y + Z` in `(W, X, Y, Z)` coordinates.
pub fn alpha_coords() -> Coords4 {
    [qi(0), qi(1), qi(-3), qi(1)]
}

/// Coordinates over `W, X, Y, Z`.
pub type Coords4 = [Q; 4];
/// Coordinates over `A, …, H`.
pub type Coords8 = [Q; 8];

fn zero4() -> Coords4 {
    std::array::from_fn(|_| Q::zero())
}

fn zero8() -> Coords8 {
    std::array::from_fn(|_| Q::zero())
}

/// `δ = I({1}_2,{1,…,1}_1)` for any `n ≥ 2`.
pub fn delta_partition(n: usize) -> Result<LabelledPartition> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("δ needs n ≥ 2, got {n}")));
    }
    let ones = vec!["1"; n - 2].join(",");
    let s = if n == 2 {
        "{1}_2".to_string()
    } else {
        format!("{{1}}_2,{{{ones}}}_1")
    };
    s.parse()
}

/// Named classes of one `S^[n]`.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    ring: Arc<HilbRing>,
    classes: BTreeMap<String, SymElement>,
}

impl InvariantBasis {
    /// All of [`FOUR_CLASSES`] for `n = 4`; only `delta` for `n = 3`.
    pub fn new(ring: Arc<HilbRing>) -> Result<Self> {
        let mut classes = BTreeMap::new();
        match ring.n() {
            4 => {
                for (name, lp) in FOUR_CLASSES {
                    classes.insert(name.to_string(), ring.build_class(&lp.parse()?)?);
                }
            }
            3 => {
                classes.insert("delta".into(), ring.build_class(&delta_partition(3)?)?);
            }
            n => {
                return Err(Error::InvalidArgument(format!(
                    "named bases exist for n = 3, 4 only, got {n}"
                )))
            }
        }
        Ok(InvariantBasis { ring, classes })
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn ring(&self) -> &HilbRing {
        &self.ring
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.classes.keys().map(String::as_str)
    }

    pub fn class(&self, name: &str) -> Result<&SymElement> {
        self.classes
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no class named {name:?}")))
    }

    pub fn classes(&self, names: &[&str]) -> Result<Vec<&SymElement>> {
        names.iter().map(|n| self.class(n)).collect()
    }

    /// Cohomological degree of a named class.
    pub fn degree(&self, name: &str) -> Result<i32> {
        match self.ring.degree(self.class(name)?) {
            Degree::Pure(d) => Ok(d),
            other => Err(Error::CheckFailed(format!(
                "class {name} has degree {other:?}"
            ))),
        }
    }

    /// Every class is homogeneous, nonzero and `S_n`-invariant.
    pub fn check_classes(&self) -> Result<()> {
        for (name, x) in &self.classes {
            ensure(!x.is_zero(), || format!("class {name} vanishes"))?;
            self.degree(name)?;
            ensure(self.ring.is_invariant(x)?, || {
                format!("class {name} is not invariant")
            })?;
        }
        Ok(())
    }

    /// `L(x)`: the class `x` placed on one point, symmetrised.
    pub fn lift(&self, x: &K3Class) -> Result<SymElement> {
        let n = self.n();
        let id = crate::perm::Perm::identity(n);
        let mut out = self.ring.zero();
        for (l, c) in x.terms() {
            for slot in 0..n {
                let mut labels = vec![crate::frobenius::UNIT; n];
                labels[slot] = l;
                out.add_term(self.ring.key(&id, &labels)?, c.clone());
            }
        }
        Ok(out)
    }

    /// `θ = Σ_j L(e_j) L(e_j^∨) + δ²/(2 - 2n)`.
    pub fn theta(&self) -> Result<SymElement> {
        let alg = self.ring.algebra();
        let mut sum = self.ring.zero();
        for j in 0..MIDDLE_RANK {
            let a = self.lift(&K3Class::basis(middle(j)))?;
            let b = self.lift(&alg.middle_dual(j))?;
            sum = sum.add(&self.ring.cup(&a, &b)?)?;
        }
        let d = self.class("delta")?;
        let d2 = self.ring.cup(d, d)?;
        sum.add(&d2.scale(&qr(1, 2 - 2 * self.n() as i64)))
    }
}

/// Incremental row echelon form over a fixed number of columns.
struct Echelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone() / &row[*p];
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

fn support(xs: &[&SymElement]) -> Vec<Key> {
    let set: BTreeSet<Key> = xs.iter().flat_map(|x| x.terms().map(|(k, _)| k)).collect();
    set.into_iter().collect()
}

/// Keys on which the basis restricts to an invertible matrix.
fn pivot_keys(basis: &[&SymElement]) -> Result<Vec<Key>> {
    let mut ech = Echelon::new();
    let mut keys = Vec::new();
    for k in support(basis) {
        let row: Vec<Q> = basis.iter().map(|b| b.coefficient(k)).collect();
        if ech.insert(row) {
            keys.push(k);
            if keys.len() == basis.len() {
                return Ok(keys);
            }
        }
    }
    Err(Error::Singular(format!(
        "basis of {} elements has rank {}",
        basis.len(),
        keys.len()
    )))
}

/// Rank of the coefficient matrix of `xs`.
pub fn rank(xs: &[&SymElement]) -> usize {
    let mut ech = Echelon::new();
    let mut r = 0;
    for k in support(xs) {
        if ech.insert(xs.iter().map(|b| b.coefficient(k)).collect()) {
            r += 1;
            if r == xs.len() {
                break;
            }
        }
    }
    r
}

/// Coordinates of `x` over `basis`; solves on a set of pivot keys, then
/// checks the combination against every term.
pub fn express(x: &SymElement, basis: &[&SymElement]) -> Result<Vec<Q>> {
    let keys = pivot_keys(basis)?;
    let m = RatMatrix::from_fn(keys.len(), basis.len(), |i, j| {
        basis[j].coefficient(keys[i])
    });
    let rhs: Vec<Q> = keys.iter().map(|&k| x.coefficient(k)).collect();
    let coords = m.solve(&rhs)?.unique()?;
    let parts: Vec<(Q, &SymElement)> = coords.iter().cloned().zip(basis.iter().copied()).collect();
    let combo = SymElement::combination(x.n(), &parts)?;
    if &combo != x {
        return Err(Error::NotInSpan(format!(
            "element with {} terms is not a combination of the basis",
            x.len()
        )));
    }
    Ok(coords)
}

/// Same as [`express`], but through one dense solve over the whole support.
pub fn express_dense(x: &SymElement, basis: &[&SymElement]) -> Result<Vec<Q>> {
    let mut all: Vec<&SymElement> = basis.to_vec();
    all.push(x);
    let keys = support(&all);
    let m = RatMatrix::from_fn(keys.len(), basis.len(), |i, j| {
        basis[j].coefficient(keys[i])
    });
    let rhs: Vec<Q> = keys.iter().map(|&k| x.coefficient(k)).collect();
    match m.solve(&rhs) {
        Ok(s) => s.unique(),
        Err(Error::Inconsistent(_)) => Err(Error::NotInSpan("dense system is inconsistent".into())),
        Err(e) => Err(e),
    }
}

/// An element with its coordinates over named basis classes.
#[derive(Clone, Debug, PartialEq)]
pub struct RingElement {
    pub names: Vec<String>,
    pub coords: Vec<Q>,
    pub element: SymElement,
}

impl RingElement {
    pub fn new(basis: &InvariantBasis, names: &[&str], coords: Vec<Q>) -> Result<Self> {
        if names.len() != coords.len() {
            return Err(Error::Shape(format!(
                "{} names, {} coordinates",
                names.len(),
                coords.len()
            )));
        }
        let classes = basis.classes(names)?;
        let parts: Vec<(Q, &SymElement)> = coords.iter().cloned().zip(classes).collect();
        Ok(RingElement {
            names: names.iter().map(|s| s.to_string()).collect(),
            coords,
            element: SymElement::combination(basis.n(), &parts)?,
        })
    }

    /// Coordinates as `name → value` pairs, zero coordinates omitted.
    pub fn display(&self) -> String {
        let terms: Vec<String> = self
            .names
            .iter()
            .zip(&self.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| format!("{}·{n}", format_q(c)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Which generators appear in a top-degree monomial `δ^a θ^b c₂^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub delta: u32,
    pub theta: u32,
    pub c2: u32,
}

impl Monomial {
    pub fn new(delta: u32, theta: u32, c2: u32) -> Self {
        Monomial { delta, theta, c2 }
    }

    pub fn degree(&self) -> u32 {
        2 * self.delta + 4 * self.theta + 4 * self.c2
    }

    pub fn check_top(&self, n: usize) -> Result<()> {
        if self.degree() as usize != 4 * n {
            return Err(Error::InvalidArgument(format!(
                "{self} has degree {} but S^[{n}] has dimension {}",
                self.degree(),
                4 * n
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("δ", self.delta), ("θ", self.theta), ("c₂", self.c2)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// `∫ f_1 ⋯ f_r`, multiplying left to right and pairing the last factor.
pub fn integrate_factors(ring: &HilbRing, factors: &[&SymElement]) -> Result<Q> {
    let (last, init) = factors
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
    let mut acc = ring.unit();
    for f in init {
        acc = ring.cup(&acc, f)?;
    }
    ring.integrate_product(&acc, last)
}

/// Right-hand sides feeding the determination of `c₂(S^[4])`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chern2Inputs {
    /// `c₂` against `θ³, δ²θ², δ⁴θ, δ⁶`.
    pub linear: [Q; 4],
    /// `c₂²` against `θ², δ²θ, δ⁴`.
    pub quadratic: [Q; 3],
    /// `c₂⁴`.
    pub quartic: Q,
}

/// Intermediate and final data of the `c₂` solve.
#[derive(Clone, Debug, PartialEq)]
pub struct Chern2Solution {
    pub linear_matrix: RatMatrix,
    pub linear_rank: usize,
    /// Solution with vanishing `W` and `Z` coordinates.
    pub particular: Coords4,
    /// Directions moving `X` and `Y` by one respectively.
    pub directions: [Coords4; 2],
    /// Rational `(u, v)` meeting all quadratic conditions.
    pub candidates: Vec<(Q, Q)>,
    pub chosen: (Q, Q),
    pub coords: Coords4,
}

/// Data of the class `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaData {
    pub coords: Coords4,
    /// Degree-12 monomials that `α` must annihilate, with the pairing found.
    pub pairings: Vec<(Monomial, Q)>,
    /// `α²θ², α²θc₂, α²c₂²`.
    pub squares: [Q; 3],
}

/// The coordinate model of `H*(S^[4])` in degrees 4 and 8.
#[derive(Clone, Debug)]
pub struct FourRing {
    basis: InvariantBasis,
    table: [[Coords8; 4]; 4],
    gram: RatMatrix,
    delta2: Coords4,
    theta: Coords4,
    delta4: Coords8,
}

impl FourRing {
    pub fn new(alg: Arc<FrobeniusAlgebra>) -> Result<Self> {
        let ring = Arc::new(HilbRing::new(alg, 4)?);
        let basis = InvariantBasis::new(ring)?;
        let r = basis.ring();
        let b4 = basis.classes(&DEG4_NAMES)?;
        let b8 = basis.classes(&DEG8_NAMES)?;
        let to4 = |v: Vec<Q>| -> Coords4 { v.try_into().expect("four coordinates") };
        let to8 = |v: Vec<Q>| -> Coords8 { v.try_into().expect("eight coordinates") };

        let d = basis.class("delta")?;
        let d2 = r.cup(d, d)?;
        let delta2 = to4(express(&d2, &b4)?);

        let mut table: [[Coords8; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| zero8()));
        for i in 0..4 {
            for j in i..4 {
                let p = to8(express(&r.cup(b4[i], b4[j])?, &b8)?);
                table[j][i] = p.clone();
                table[i][j] = p;
            }
        }
        let mut gram = RatMatrix::zeros(8, 8);
        for i in 0..8 {
            for j in i..8 {
                let v = r.integrate_product(b8[i], b8[j])?;
                gram[(i, j)] = v.clone();
                gram[(j, i)] = v;
            }
        }
        let theta = to4(express(&basis.theta()?, &b4)?);
        let delta4 = to8(express(&r.cup(&d2, &d2)?, &b8)?);
        Ok(FourRing {
            basis,
            table,
            gram,
            delta2,
            theta,
            delta4,
        })
    }

    pub fn basis(&self) -> &InvariantBasis {
        &self.basis
    }

    /// Products of `W, X, Y, Z` over `A…H`, symmetric.
    pub fn degree4_table(&self) -> &[[Coords8; 4]; 4] {
        &self.table
    }

    /// `∫ b_i b_j` over `A…H`.
    pub fn gram_ah(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn delta_squared(&self) -> &Coords4 {
        &self.delta2
    }

    pub fn theta(&self) -> &Coords4 {
        &self.theta
    }

    /// `δ⁴` over `A…H`, computed from the cup `δ²·δ²`.
    pub fn delta_fourth(&self) -> &Coords8 {
        &self.delta4
    }

    pub fn element(&self, names: &[&str], coords: &[Q]) -> Result<RingElement> {
        RingElement::new(&self.basis, names, coords.to_vec())
    }

    /// Product of two degree-4 classes over `A…H`.
    pub fn mul4(&self, a: &Coords4, b: &Coords4) -> Coords8 {
        let mut out = zero8();
        for i in 0..4 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if b[j].is_zero() {
                    continue;
                }
                let k = &a[i] * &b[j];
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o += &k * t;
                }
            }
        }
        out
    }

    /// `∫ a·b` for degree-8 classes.
    pub fn pair8(&self, a: &Coords8, b: &Coords8) -> Q {
        let gb = self.gram.mul_vec(b).expect("8 coordinates");
        a.iter().zip(&gb).map(|(x, y)| x * y).sum()
    }

    /// `∫ a·b·c·d` for degree-4 classes.
    pub fn integrate4(&self, a: &Coords4, b: &Coords4, c: &Coords4, d: &Coords4) -> Q {
        self.pair8(&self.mul4(a, b), &self.mul4(c, d))
    }

    /// `∫ δ^a θ^b c₂^c` through the coordinate model.
    pub fn product_value(&self, m: Monomial, c2: &Coords4) -> Result<Q> {
        m.check_top(4)?;
        if !m.delta.is_multiple_of(2) {
            return Ok(Q::zero());
        }
        let mut f: Vec<&Coords4> = Vec::new();
        f.extend(std::iter::repeat_n(&self.delta2, (m.delta / 2) as usize));
        f.extend(std::iter::repeat_n(&self.theta, m.theta as usize));
        f.extend(std::iter::repeat_n(c2, m.c2 as usize));
        Ok(self.integrate4(f[0], f[1], f[2], f[3]))
    }

    /// `∫ δ⁸` from the cup product `δ⁴` paired with itself.
    pub fn delta8_direct(&self) -> Result<Q> {
        let r = self.basis.ring();
        let d = self.basis.class("delta")?;
        let d2 = r.cup(d, d)?;
        let d4 = r.cup(&d2, &d2)?;
        r.integrate_product(&d4, &d4)
    }

    /// `∫ θ⁴` from the cup product `θ²` paired with itself.
    pub fn theta4_direct(&self) -> Result<Q> {
        let r = self.basis.ring();
        let t = self.basis.theta()?;
        let t2 = r.cup(&t, &t)?;
        r.integrate_product(&t2, &t2)
    }

    /// Determines `c₂` from the intersection numbers in `inputs`.
    pub fn chern2_class(&self, inputs: &Chern2Inputs) -> Result<Chern2Solution> {
        let (d2, th) = (&self.delta2, &self.theta);
        let partners: [[&Coords4; 3]; 4] = [[th, th, th], [d2, th, th], [d2, d2, th], [d2, d2, d2]];
        let unit =
            |i: usize| -> Coords4 { std::array::from_fn(|j| if i == j { qi(1) } else { qi(0) }) };
        let linear_matrix = RatMatrix::from_fn(4, 4, |row, col| {
            let [a, b, c] = partners[row];
            self.integrate4(&unit(col), a, b, c)
        });
        let linear_rank = linear_matrix.rank();

        // fixes two coordinates on top of the four linear conditions
        let pinned = |pins: [(usize, Q); 2], homogeneous: bool| -> Result<Coords4> {
            let mut rows = linear_matrix.to_rows();
            let mut rhs: Vec<Q> = if homogeneous {
                vec![qi(0); 4]
            } else {
                inputs.linear.to_vec()
            };
            for (c, v) in pins {
                rows.push(unit(c).to_vec());
                rhs.push(v);
            }
            let v = RatMatrix::from_rows(rows)?.solve(&rhs)?.unique()?;
            Ok(v.try_into().expect("four coordinates"))
        };
        let particular = pinned([(0, qi(0)), (3, qi(0))], false)?;
        let directions = [
            pinned([(1, qi(1)), (2, qi(0))], true)?,
            pinned([(1, qi(0)), (2, qi(1))], true)?,
        ];

        let quad_partners: [[&Coords4; 2]; 3] = [[th, th], [d2, th], [d2, d2]];
        let mut conditions = Vec::new();
        for (k, [a, b]) in quad_partners.iter().enumerate() {
            let form =
                |x: &Coords4, y: &Coords4| -> Q { self.pair8(&self.mul4(x, y), &self.mul4(a, b)) };
            let (p, ku, kv) = (&particular, &directions[0], &directions[1]);
            conditions.push(BiPoly::from_terms(&[
                (0, 0, form(p, p) - &inputs.quadratic[k]),
                (1, 0, qi(2) * form(p, ku)),
                (0, 1, qi(2) * form(p, kv)),
                (2, 0, form(ku, ku)),
                (1, 1, qi(2) * form(ku, kv)),
                (0, 2, form(kv, kv)),
            ]));
        }
        let candidates = common_rational_zeros(&conditions)?;
        let at = |(u, v): &(Q, Q)| -> Coords4 {
            std::array::from_fn(|i| &particular[i] + u * &directions[0][i] + v * &directions[1][i])
        };
        let accepted: Vec<&(Q, Q)> = candidates
            .iter()
            .filter(|uv| {
                let c = at(uv);
                self.integrate4(&c, &c, &c, &c) == inputs.quartic
            })
            .collect();
        if accepted.len() != 1 {
            return Err(Error::CheckFailed(format!(
                "{} of {} candidates for c₂ satisfy the quartic condition",
                accepted.len(),
                candidates.len()
            )));
        }
        let chosen = accepted[0].clone();
        let coords = at(&chosen);
        Ok(Chern2Solution {
            linear_matrix,
            linear_rank,
            particular,
            directions,
            candidates,
            chosen,
            coords,
        })
    }

    /// Checks that `α` annihilates `δ⁶` and the degree-12 monomials in
    /// `δ, θ, c₂`, and returns its squares against `θ², θc₂, c₂²`.
    pub fn alpha_class(&self, c2: &Coords4) -> Result<AlphaData> {
        let alpha = alpha_coords();
        let mut pairings = Vec::new();
        for m in degree12_monomials() {
            let mut f: Vec<&Coords4> = vec![&alpha];
            f.extend(std::iter::repeat_n(&self.delta2, (m.delta / 2) as usize));
            f.extend(std::iter::repeat_n(&self.theta, m.theta as usize));
            f.extend(std::iter::repeat_n(c2, m.c2 as usize));
            let v = self.integrate4(f[0], f[1], f[2], f[3]);
            ensure(v.is_zero(), || {
                format!("α·{m} = {} is not zero", format_q(&v))
            })?;
            pairings.push((m, v));
        }
        let sq = |x: &Coords4, y: &Coords4| self.integrate4(&alpha, &alpha, x, y);
        let squares = [
            sq(&self.theta, &self.theta),
            sq(&self.theta, c2),
            sq(c2, c2),
        ];
        Ok(AlphaData {
            coords: alpha,
            pairings,
            squares,
        })
    }
}

/// `δ^{2k} θ^ℓ c₂^m` with `k + ℓ + m = 3`.
pub fn degree12_monomials() -> Vec<Monomial> {
    let mut out = Vec::new();
    for k in (0..=3u32).rev() {
        for l in (0..=3 - k).rev() {
            out.push(Monomial::new(2 * k, l, 3 - k - l));
        }
    }
    out
}

/// `H*(S^[3])` through direct products of `δ` and `θ`.
#[derive(Clone, Debug)]
pub struct ThreeRing {
    basis: InvariantBasis,
    delta2: SymElement,
    theta: SymElement,
}

impl ThreeRing {
    pub fn new(alg: Arc<FrobeniusAlgebra>) -> Result<Self> {
        let ring = Arc::new(HilbRing::new(alg, 3)?);
        let basis = InvariantBasis::new(ring)?;
        let d = basis.class("delta")?;
        let delta2 = basis.ring().cup(d, d)?;
        let theta = basis.theta()?;
        Ok(ThreeRing {
            basis,
            delta2,
            theta,
        })
    }

    pub fn basis(&self) -> &InvariantBasis {
        &self.basis
    }

    pub fn theta(&self) -> &SymElement {
        &self.theta
    }

    /// `c₂(S^[3]) = 4/3 θ`.
    pub fn chern2(&self) -> SymElement {
        self.theta.scale(&qr(4, 3))
    }

    /// `∫ δ^a θ^b c₂^c` by direct products.
    pub fn product_value(&self, m: Monomial) -> Result<Q> {
        m.check_top(3)?;
        if !m.delta.is_multiple_of(2) {
            return Ok(Q::zero());
        }
        let c2 = self.chern2();
        let mut f: Vec<&SymElement> = Vec::new();
        f.extend(std::iter::repeat_n(&self.delta2, (m.delta / 2) as usize));
        f.extend(std::iter::repeat_n(&self.theta, m.theta as usize));
        f.extend(std::iter::repeat_n(&c2, m.c2 as usize));
        integrate_factors(self.basis.ring(), &f)
    }
}

/// Default `c₂` coordinates `3Z + 33Y - W`, for callers that skip the solve.
pub fn chern2_reference() -> Coords4 {
    [qi(-1), qi(0), qi(33), qi(3)]
}

/// Sum of coordinate vectors with coefficients.
pub fn combine4(parts: &[(Q, &Coords4)]) -> Coords4 {
    let mut out = zero4();
    for (c, v) in parts {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use std::sync::OnceLock;

    fn four() -> &'static FourRing {
        static R: OnceLock<FourRing> = OnceLock::new();
        R.get_or_init(|| FourRing::new(Arc::new(FrobeniusAlgebra::k3())).unwrap())
    }

    fn v8(c: [i64; 8]) -> Coords8 {
        c.map(qi)
    }

    #[test]
    fn delta_partitions() {
        assert_eq!(delta_partition(4).unwrap().to_string(), "I({1}_2,{1,1}_1)");
        assert_eq!(delta_partition(2).unwrap().to_string(), "I({1}_2)");
        assert!(delta_partition(1).is_err());
    }

    #[test]
    fn degrees_and_independence() {
        let b = four().basis();
        for (names, d) in [
            (&["delta"][..], 2),
            (&DEG4_NAMES[..], 4),
            (&DEG6_NAMES[..], 6),
            (&DEG8_NAMES[..], 8),
        ] {
            for n in names {
                assert_eq!(b.degree(n).unwrap(), d, "{n}");
            }
            assert_eq!(rank(&b.classes(names).unwrap()), names.len());
        }
    }

    #[test]
    fn expressing_elements() {
        let f = four();
        let b = f.basis();
        let b4 = b.classes(&DEG4_NAMES).unwrap();
        assert_eq!(
            express(b4[0], &b4).unwrap(),
            vec![qi(1), qi(0), qi(0), qi(0)]
        );
        assert_eq!(
            f.delta_squared().to_vec(),
            vec![qi(3), qi(2), qi(-3), qi(-1)]
        );
        let r = b.ring();
        let td = r
            .cup(&b.theta().unwrap(), b.class("delta").unwrap())
            .unwrap();
        let b6 = b.classes(&DEG6_NAMES).unwrap();
        assert_eq!(express(&td, &b6).unwrap(), express_dense(&td, &b6).unwrap());
        assert!(matches!(
            express(b.class("delta").unwrap(), &b4),
            Err(Error::NotInSpan(_))
        ));
        let dup = [b4[0], b4[0]];
        assert!(matches!(express(b4[0], &dup), Err(Error::Singular(_))));
    }

    #[test]
    fn degree_four_table() {
        let t = four().degree4_table();
        assert_eq!(t[0][0], v8([-3, -3, -27, -8, -8, 4, 2, 0]));
        assert_eq!(t[0][1], v8([-3, -3, -3, 0, 0, 0, 0, 0]));
        assert_eq!(t[0][2], v8([0, 1, 3, 0, 0, 0, 0, 0]));
        assert_eq!(t[0][3], v8([3, 0, 66, 0, 0, 0, 0, 0]));
        assert_eq!(t[1][1], v8([0, 0, 0, -2, -2, 2, 1, 1]));
        assert_eq!(t[1][2], v8([0, 0, 0, 2, 0, 0, 0, 0]));
        assert_eq!(t[1][3], v8([0, 0, 0, 22, 4, 0, 0, 0]));
        assert_eq!(t[2][2], v8([0, 0, 0, 0, 0, 2, 0, 0]));
        assert_eq!(t[2][3], v8([0, 0, 0, 0, 0, 0, 1, 0]));
        assert_eq!(t[3][3], v8([0, 0, 0, 0, 0, 22, 2, 2]));
    }

    #[test]
    fn gram_of_top_classes() {
        let g = four().gram_ah();
        let diag = [176, 0, 0, 6, 66, 6, 264, 1584];
        for i in 0..8 {
            for j in 0..8 {
                let want = if i == j {
                    qr(diag[i], 24)
                } else if (i, j) == (1, 2) || (i, j) == (2, 1) {
                    qr(8, 24)
                } else {
                    qi(0)
                };
                assert_eq!(g[(i, j)], want, "({i}, {j})");
            }
        }
    }

    #[test]
    fn delta_fourth_and_eighth() {
        let f = four();
        assert_eq!(
            f.delta_fourth(),
            &v8([-81, -81, -729, -192, -96, 84, 30, 6])
        );
        assert_eq!(
            f.mul4(f.delta_squared(), f.delta_squared()),
            *f.delta_fourth()
        );
        let d8 = f
            .product_value(Monomial::new(8, 0, 0), &chern2_reference())
            .unwrap();
        assert_eq!(d8, qi(136080));
        assert_eq!(f.delta8_direct().unwrap(), d8);
    }

    #[test]
    fn theta_coordinates_and_powers() {
        let f = four();
        assert_eq!(f.theta(), &[qr(-1, 2), qr(-1, 3), qr(45, 2), qr(13, 6)]);
        let c2 = chern2_reference();
        let want = [
            (0, 4, 450225),
            (2, 3, -117450),
            (4, 2, 84564),
            (6, 1, -93960),
        ];
        for (d, t, v) in want {
            assert_eq!(f.product_value(Monomial::new(d, t, 0), &c2).unwrap(), qi(v));
        }
        assert!(f.product_value(Monomial::new(2, 0, 0), &c2).is_err());
    }

    #[test]
    fn theta_fourth_direct() {
        assert_eq!(four().theta4_direct().unwrap(), qi(450225));
    }

    #[test]
    fn alpha_and_closed_forms() {
        let f = four();
        let c2 = chern2_reference();
        let alpha = alpha_coords();
        let a = f.alpha_class(&c2).unwrap();
        assert_eq!(a.pairings.len(), 10);
        assert_eq!(a.squares, [qi(9450), qi(14148), qi(21168)]);
        let d2 = f.delta_squared();
        let th = f.theta();
        assert_eq!(f.mul4(&alpha, &alpha), v8([0, 0, 0, 30, 6, 42, -3, 3]));
        assert_eq!(f.mul4(&alpha, d2), v8([0, -18, 162, 0, 0, 0, 0, 0]));
        assert_eq!(f.mul4(&alpha, th), v8([0, 3, -27, 88, 8, -88, 20, 4]));
        assert_eq!(f.mul4(&alpha, &c2), v8([0, 6, -54, 132, 12, -132, 30, 6]));
        let q = |n: i64, d: i64| qr(n, d);
        assert_eq!(
            f.mul4(th, th),
            [
                q(-33, 4),
                q(-97, 4),
                q(-873, 4),
                q(-64, 1),
                q(-8, 1),
                q(1117, 1),
                q(215, 2),
                q(19, 2)
            ]
        );
        assert_eq!(
            f.mul4(th, &c2),
            [
                q(-27, 2),
                q(-83, 2),
                q(-747, 2),
                q(-48, 1),
                q(-8, 1),
                q(1630, 1),
                q(153, 1),
                q(13, 1)
            ]
        );
        assert_eq!(
            f.mul4(&c2, &c2),
            v8([-21, -69, -621, -8, -8, 2380, 218, 18])
        );
    }

    #[test]
    fn chern2_from_reference_inputs() {
        let inputs = Chern2Inputs {
            linear: [qi(652050), qi(-170100), qi(122472), qi(-136080)],
            quadratic: [qi(945300), qi(-246600), qi(177552)],
            quartic: qi(1992240),
        };
        let s = four().chern2_class(&inputs).unwrap();
        assert_eq!(s.linear_rank, 2);
        assert_eq!(s.particular, [qi(0), qr(-21, 4), qi(42), qi(0)]);
        assert_eq!(s.directions[0], [qr(-4, 9), qi(1), qi(0), qi(0)]);
        assert_eq!(s.directions[1], [qr(-4, 27), qi(0), qi(1), qr(-1, 3)]);
        assert_eq!(
            s.candidates,
            vec![(qr(497, 116), qr(-285, 29)), (qr(21, 4), qi(-9))]
        );
        assert_eq!(s.chosen, (qr(21, 4), qi(-9)));
        assert_eq!(s.coords, chern2_reference());
        let mut bad = inputs.clone();
        bad.quartic = qi(1);
        assert!(four().chern2_class(&bad).is_err());
    }

    #[test]
    fn reference_linear_system_rows() {
        let s = four()
            .chern2_class(&Chern2Inputs {
                linear: [qi(652050), qi(-170100), qi(122472), qi(-136080)],
                quadratic: [qi(945300), qi(-246600), qi(177552)],
                quartic: qi(1992240),
            })
            .unwrap();
        let m = &s.linear_matrix;
        assert_eq!(
            m.row(0),
            &[qi(-6075), qi(-2700), qr(30375, 2), qr(96525, 2)]
        );
        assert_eq!(m.row(1), &[qi(15066), qi(6696), qi(-3213), qi(-16335)]);
        assert_eq!(m.row(2), &[qi(-19116), qi(-8496), qi(1854), qi(14058)]);
        assert_eq!(m.row(3), &[qi(29160), qi(12960), qi(-1620), qi(-17820)]);
    }

    #[test]
    fn three_ring_products() {
        let r = ThreeRing::new(Arc::new(FrobeniusAlgebra::k3())).unwrap();
        let cases = [
            ((0, 3, 0), 15525),
            ((2, 2, 0), -2700),
            ((4, 1, 0), 1296),
            ((0, 2, 1), 20700),
            ((2, 1, 1), -3600),
            ((6, 0, 0), -960),
            ((4, 0, 1), 1728),
        ];
        for ((d, t, c), v) in cases {
            assert_eq!(
                r.product_value(Monomial::new(d, t, c)).unwrap(),
                qi(v),
                "{d} {t} {c}"
            );
        }
        assert!(r.product_value(Monomial::new(8, 0, 0)).is_err());
    }

    #[test]
    fn lift_is_invariant_and_theta_invariant() {
        let b = four().basis();
        let l = b.lift(&K3Class::point()).unwrap();
        assert!(b.ring().is_invariant(&l).unwrap());
        let t = b.theta().unwrap();
        assert!(b.ring().is_invariant(&t).unwrap());
        let tau = Perm::from_cycles(4, &[&[1, 3]]).unwrap();
        assert_eq!(b.ring().act(&tau, &t).unwrap(), t);
    }
}
