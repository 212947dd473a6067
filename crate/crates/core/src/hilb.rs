//! The Lehn–Sorger algebra `A{S_n}` over the K3 Frobenius algebra and its
//! invariant part, a model of `H*(S^[n], Q)`.
//!
//! An element is a sparse map from keys to rationals. A key packs the index
//! of a permutation `σ` together with one basis label of `A` per orbit of
//! `σ`, orbits taken in the canonical order of [`OrbitPartition`].
//!
//! Degrees: a term with permutation `σ` and labels `l_i` has cohomological
//! degree `Σ deg(l_i) + 2|σ|`, where `deg` is the ordinary degree on
//! `H*(S)` (0, 2, 4). The shifted degree is this minus `2n`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::frobenius::{
    combine_degrees, label_degree, label_name, middle, Degree, FrobeniusAlgebra, Label,
    MIDDLE_RANK, POINT, UNIT,
};
use crate::perm::{OrbitPartition, Perm, MAX_N};
use crate::rational::{factorial, qi, Q};
use crate::{Error, Result};

/// Packed `(σ, labels)` key.
pub type Key = u64;

const PERM_SHIFT: u32 = 40;

#[inline]
fn pack(perm: usize, labels: &[Label]) -> Key {
    let mut k = (perm as u64) << PERM_SHIFT;
    for (i, &l) in labels.iter().enumerate() {
        k |= (l as u64) << (8 * i);
    }
    k
}

#[inline]
fn key_perm(k: Key) -> usize {
    (k >> PERM_SHIFT) as usize
}

#[inline]
fn key_label(k: Key, i: usize) -> Label {
    ((k >> (8 * i)) & 0xff) as Label
}

/// Element of `A{S_n}`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SymElement {
    n: usize,
    terms: FxHashMap<Key, Q>,
}

impl SymElement {
    pub fn zero(n: usize) -> Self {
        SymElement {
            n,
            terms: FxHashMap::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: Key) -> Q {
        self.terms.get(&key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Key, &Q)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Terms in increasing key order.
    pub fn sorted_terms(&self) -> Vec<(Key, Q)> {
        let mut v: Vec<(Key, Q)> = self.terms.iter().map(|(k, q)| (*k, q.clone())).collect();
        v.sort_unstable_by_key(|(k, _)| *k);
        v
    }

    pub fn add_term(&mut self, key: Key, k: Q) {
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Q::zero);
        *e += k;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_n(&self, other: &SymElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "elements live in different rings (n = {} and {})",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymElement) -> Result<SymElement> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, k: &Q) -> SymElement {
        if k.is_zero() {
            return SymElement::zero(self.n);
        }
        SymElement {
            n: self.n,
            terms: self.terms.iter().map(|(key, v)| (*key, v * k)).collect(),
        }
    }

    /// `Σ c_i x_i`.
    pub fn combination(n: usize, parts: &[(Q, &SymElement)]) -> Result<SymElement> {
        let mut out = SymElement::zero(n);
        for (c, x) in parts {
            out = out.add(&x.scale(c))?;
        }
        Ok(out)
    }
}

/// Tensor over the blocks of a partition: labels are listed per block in
/// the partition's block order.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockTensor {
    pub partition: OrbitPartition,
    pub terms: BTreeMap<Vec<Label>, Q>,
}

impl BlockTensor {
    pub fn new(partition: OrbitPartition) -> Self {
        BlockTensor {
            partition,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, labels: Vec<Label>, k: Q) {
        assert_eq!(labels.len(), self.partition.len());
        if k.is_zero() {
            return;
        }
        let e = self.terms.entry(labels.clone()).or_insert_with(Q::zero);
        *e += k;
        if e.is_zero() {
            self.terms.remove(&labels);
        }
    }
}

/// Per-pair data of the product `A^σ ⊗ A^τ → A^{στ}`.
#[derive(Clone, Debug)]
struct ProductPlan {
    result: u16,
    blocks: u8,
    sigma_block: [u8; MAX_N],
    tau_block: [u8; MAX_N],
    defect: [u8; MAX_N],
    /// Orbits of `στ` inside each block, in canonical order.
    out_orbits: Vec<Vec<u8>>,
}

/// `S_n` with multiplication table, orbit data and product plans.
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    n: usize,
    perms: Vec<Perm>,
    index: HashMap<Vec<u8>, usize>,
    mult: Vec<u16>,
    inv: Vec<u16>,
    orbits: Vec<OrbitPartition>,
    /// `orbit_of[σ][i]` is the index of the σ-orbit containing `i`.
    orbit_of: Vec<[u8; MAX_N]>,
    plans: Vec<ProductPlan>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidArgument(format!(
                "n must lie in 1..={MAX_N}, got {n}"
            )));
        }
        let perms = Perm::all(n);
        let index: HashMap<Vec<u8>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.images().to_vec(), i))
            .collect();
        let m = perms.len();
        let mut mult = vec![0u16; m * m];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                mult[i * m + j] = index[a.compose(b).images()] as u16;
            }
        }
        let inv = perms
            .iter()
            .map(|p| index[p.inverse().images()] as u16)
            .collect();
        let orbits: Vec<OrbitPartition> = perms.iter().map(Perm::orbits).collect();
        let orbit_of = orbits
            .iter()
            .map(|o| {
                let mut a = [0u8; MAX_N];
                for (b, block) in o.blocks().iter().enumerate() {
                    for &i in block {
                        a[i as usize] = b as u8;
                    }
                }
                a
            })
            .collect();
        let mut group = SymmetricGroup {
            n,
            perms,
            index,
            mult,
            inv,
            orbits,
            orbit_of,
            plans: Vec::new(),
        };
        let mut plans = Vec::with_capacity(m * m);
        for s in 0..m {
            for t in 0..m {
                plans.push(group.plan(s, t)?);
            }
        }
        group.plans = plans;
        Ok(group)
    }

    fn plan(&self, s: usize, t: usize) -> Result<ProductPlan> {
        let st = self.mult[s * self.perms.len() + t] as usize;
        let join = self.orbits[s].join(&self.orbits[t]);
        let mut plan = ProductPlan {
            result: st as u16,
            blocks: join.len() as u8,
            sigma_block: [0; MAX_N],
            tau_block: [0; MAX_N],
            defect: [0; MAX_N],
            out_orbits: vec![Vec::new(); join.len()],
        };
        for (i, o) in self.orbits[s].blocks().iter().enumerate() {
            plan.sigma_block[i] = join.block_of(o[0]) as u8;
        }
        for (i, o) in self.orbits[t].blocks().iter().enumerate() {
            plan.tau_block[i] = join.block_of(o[0]) as u8;
        }
        for (i, o) in self.orbits[st].blocks().iter().enumerate() {
            plan.out_orbits[join.block_of(o[0])].push(i as u8);
        }
        for (b, block) in join.blocks().iter().enumerate() {
            let g = crate::perm::graph_defect(&self.perms[s], &self.perms[t], block)?;
            plan.defect[b] = g as u8;
        }
        Ok(plan)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, i: usize) -> &Perm {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn index_of(&self, p: &Perm) -> Result<usize> {
        self.index
            .get(p.images())
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("{p} is not in S_{}", self.n)))
    }

    pub fn orbits(&self, i: usize) -> &OrbitPartition {
        &self.orbits[i]
    }

    pub fn identity(&self) -> usize {
        0
    }
}

/// Label of one part of a [`LabelledPartition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartLabel {
    Unit,
    Point,
    /// `e_j` side of the pair with the given id.
    E(u8),
    /// `e_j^∨` side of the pair with the given id.
    EDual(u8),
}

impl PartLabel {
    fn code(self) -> u8 {
        match self {
            PartLabel::Unit => 0,
            PartLabel::Point => 1,
            PartLabel::E(p) => 2 + 2 * p,
            PartLabel::EDual(p) => 3 + 2 * p,
        }
    }
}

impl fmt::Display for PartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartLabel::Unit => write!(f, "1"),
            PartLabel::Point => write!(f, "pt"),
            PartLabel::E(p) => write!(f, "e{}", p + 1),
            PartLabel::EDual(p) => write!(f, "e{}^", p + 1),
        }
    }
}

/// A partition of `n` with a label on every part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPartition {
    parts: Vec<(usize, PartLabel)>,
    pairs: u8,
}

impl LabelledPartition {
    /// Validates sizes and pair structure; pair ids are renumbered densely.
    pub fn new(parts: Vec<(usize, PartLabel)>) -> Result<Self> {
        if parts.iter().any(|(s, _)| *s == 0) {
            return Err(Error::InvalidArgument("part sizes must be positive".into()));
        }
        let mut e: BTreeMap<u8, usize> = BTreeMap::new();
        let mut d: BTreeMap<u8, usize> = BTreeMap::new();
        for (_, l) in &parts {
            match l {
                PartLabel::E(p) => *e.entry(*p).or_default() += 1,
                PartLabel::EDual(p) => *d.entry(*p).or_default() += 1,
                _ => {}
            }
        }
        if e.values().any(|&c| c != 1) || d.values().any(|&c| c != 1) || !e.keys().eq(d.keys()) {
            return Err(Error::InvalidArgument(
                "every pair needs exactly one e and one e^ slot".into(),
            ));
        }
        let renumber: HashMap<u8, u8> = e.keys().enumerate().map(|(i, &p)| (p, i as u8)).collect();
        let parts = parts
            .into_iter()
            .map(|(s, l)| {
                let l = match l {
                    PartLabel::E(p) => PartLabel::E(renumber[&p]),
                    PartLabel::EDual(p) => PartLabel::EDual(renumber[&p]),
                    other => other,
                };
                (s, l)
            })
            .collect();
        Ok(LabelledPartition {
            parts,
            pairs: e.len() as u8,
        })
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(|(s, _)| s).sum()
    }

    pub fn parts(&self) -> &[(usize, PartLabel)] {
        &self.parts
    }

    pub fn pair_count(&self) -> usize {
        self.pairs as usize
    }

    /// Part sizes in decreasing order.
    pub fn shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.parts.iter().map(|(s, _)| *s).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

impl FromStr for LabelledPartition {
    type Err = Error;

    /// Parses `{1}_2,{1,1}_1` or `I({e}_3,{e^}_1)`. Labels are `1`, `pt`,
    /// `e`, `e^`; the k-th `e` pairs with the k-th `e^` unless explicit ids
    /// are written (`e2`, `e2^`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in labelled partition {s:?}"));
        let mut body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = body.strip_prefix("I(").and_then(|b| b.strip_suffix(')')) {
            body = inner.to_string();
        }
        let mut parts = Vec::new();
        let (mut auto_e, mut auto_d) = (0u8, 0u8);
        let mut rest = body.as_str();
        while !rest.is_empty() {
            rest = rest.strip_prefix(',').unwrap_or(rest);
            let inner_start = rest.strip_prefix('{').ok_or_else(|| bad("expected '{'"))?;
            let close = inner_start.find('}').ok_or_else(|| bad("missing '}'"))?;
            let labels = &inner_start[..close];
            let after = inner_start[close + 1..]
                .strip_prefix('_')
                .ok_or_else(|| bad("expected '_' after group"))?;
            let digits: String = after.chars().take_while(|c| c.is_ascii_digit()).collect();
            let size: usize = digits.parse().map_err(|_| bad("bad part size"))?;
            rest = &after[digits.len()..];
            for tok in labels.split(',') {
                let label = match tok {
                    "1" => PartLabel::Unit,
                    "pt" | "p" => PartLabel::Point,
                    t if t.starts_with('e') => {
                        let t = &t[1..];
                        let (id, dual) = match t.strip_suffix("^v").or_else(|| t.strip_suffix('^'))
                        {
                            Some(id) => (id, true),
                            None => (t, false),
                        };
                        let pid = if id.is_empty() {
                            let c = if dual { &mut auto_d } else { &mut auto_e };
                            *c += 1;
                            *c - 1
                        } else {
                            let v: u8 = id.parse().map_err(|_| bad("bad pair id"))?;
                            v.checked_sub(1).ok_or_else(|| bad("pair ids start at 1"))? + 100
                        };
                        if dual {
                            PartLabel::EDual(pid)
                        } else {
                            PartLabel::E(pid)
                        }
                    }
                    other => return Err(bad(&format!("unknown label {other:?}"))),
                };
                parts.push((size, label));
            }
        }
        if parts.is_empty() {
            return Err(bad("no parts"));
        }
        LabelledPartition::new(parts)
    }
}

impl fmt::Display for LabelledPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sizes: Vec<usize> = self.parts.iter().map(|(s, _)| *s).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes.dedup();
        write!(f, "I(")?;
        for (k, s) in sizes.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            let labels: Vec<String> = self
                .parts
                .iter()
                .filter(|(t, _)| t == s)
                .map(|(_, l)| l.to_string())
                .collect();
            write!(f, "{{{}}}_{}", labels.join(","), s)?;
        }
        write!(f, ")")
    }
}

/// `A^{[n]}` together with its ambient algebra `A{S_n}`.
#[derive(Clone, Debug)]
pub struct HilbRing {
    alg: Arc<FrobeniusAlgebra>,
    group: SymmetricGroup,
    /// Nonzero `(e_j, e_k, gram⁻¹[j][k])` triples.
    casimir: Vec<(Label, Label, i64)>,
}

impl HilbRing {
    pub fn new(alg: Arc<FrobeniusAlgebra>, n: usize) -> Result<Self> {
        let group = SymmetricGroup::new(n)?;
        let mut casimir = Vec::new();
        for j in 0..MIDDLE_RANK {
            for (k, v) in alg.lattice().gram_inverse_row(j) {
                casimir.push((middle(j), middle(k), v));
            }
        }
        Ok(HilbRing {
            alg,
            group,
            casimir,
        })
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn algebra(&self) -> &FrobeniusAlgebra {
        &self.alg
    }

    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    /// Key of `σ` with the given labels on its orbits.
    pub fn key(&self, sigma: &Perm, labels: &[Label]) -> Result<Key> {
        let s = self.group.index_of(sigma)?;
        if labels.len() != self.group.orbits[s].len() {
            return Err(Error::Shape(format!(
                "{} labels for {} orbits of {sigma}",
                labels.len(),
                self.group.orbits[s].len()
            )));
        }
        Ok(pack(s, labels))
    }

    pub fn decode(&self, key: Key) -> (Perm, Vec<Label>) {
        let s = key_perm(key);
        let r = self.group.orbits[s].len();
        (
            self.group.perms[s].clone(),
            (0..r).map(|i| key_label(key, i)).collect(),
        )
    }

    pub fn zero(&self) -> SymElement {
        SymElement::zero(self.n())
    }

    /// Identity permutation with the unit on every point.
    pub fn unit(&self) -> SymElement {
        let mut x = self.zero();
        x.add_term(pack(0, &vec![UNIT; self.n()]), Q::one());
        x
    }

    /// The class integrating to 1: `n! [pt]⊗…⊗[pt]·id`.
    pub fn point_class(&self) -> SymElement {
        let mut x = self.zero();
        x.add_term(pack(0, &vec![POINT; self.n()]), factorial(self.n() as u32));
        x
    }

    fn term_degree(&self, key: Key) -> i32 {
        let s = key_perm(key);
        let orbits = self.group.orbits[s].len();
        let labels: i32 = (0..orbits)
            .map(|i| label_degree(key_label(key, i)) + 2)
            .sum();
        labels + 2 * (self.n() - orbits) as i32
    }

    /// Cohomological degree on `S^[n]`.
    pub fn degree(&self, x: &SymElement) -> Degree {
        combine_degrees(x.terms.keys().map(|&k| self.term_degree(k)))
    }

    fn check(&self, x: &SymElement) -> Result<()> {
        if x.n != self.n() {
            return Err(Error::InvalidArgument(format!(
                "element of A{{S_{}}} used in A{{S_{}}}",
                x.n,
                self.n()
            )));
        }
        Ok(())
    }

    /// Cup product in `A{S_n}`.
    pub fn cup(&self, x: &SymElement, y: &SymElement) -> Result<SymElement> {
        self.check(x)?;
        self.check(y)?;
        let m = self.group.order();
        let mut by_perm: Vec<Vec<(Key, &Q)>> = vec![Vec::new(); m];
        for (k, v) in y.terms() {
            by_perm[key_perm(k)].push((k, v));
        }
        for g in by_perm.iter_mut() {
            g.sort_unstable_by_key(|(k, _)| *k);
        }
        let mut xs: Vec<(Key, &Q)> = x.terms().collect();
        xs.sort_unstable_by_key(|(k, _)| *k);

        let mut out: FxHashMap<Key, Q> = FxHashMap::default();
        let mut acc: FxHashMap<Key, i64> = FxHashMap::default();
        for (kx, cx) in xs {
            let s = key_perm(kx);
            let s_orbits = self.group.orbits[s].len();
            for (t, ys) in by_perm.iter().enumerate() {
                if ys.is_empty() {
                    continue;
                }
                let plan = &self.group.plans[s * m + t];
                let Some((xb, xc)) = self.coarsen_into(kx, s_orbits, &plan.sigma_block, plan)
                else {
                    continue;
                };
                let t_orbits = self.group.orbits[t].len();
                for &(ky, cy) in ys {
                    let mut labels = xb;
                    let mut c = xc;
                    let mut alive = true;
                    for j in 0..t_orbits {
                        let b = plan.tau_block[j] as usize;
                        match self.alg.mul_basis(labels[b], key_label(ky, j)) {
                            Some((l, k)) => {
                                labels[b] = l;
                                c *= k;
                            }
                            None => {
                                alive = false;
                                break;
                            }
                        }
                    }
                    if !alive || !self.apply_euler(plan, &mut labels, &mut c) {
                        continue;
                    }
                    acc.clear();
                    self.refine_into(plan, &labels, c, &mut acc);
                    if acc.is_empty() {
                        continue;
                    }
                    let ab = cx * cy;
                    for (&key, &k) in acc.iter() {
                        if k == 0 {
                            continue;
                        }
                        let term = &ab * BigInt::from(k);
                        match out.get_mut(&key) {
                            Some(e) => *e += term,
                            None => {
                                out.insert(key, term);
                            }
                        }
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(SymElement {
            n: self.n(),
            terms: out,
        })
    }

    /// Multiplies the labels of `key` into join blocks.
    #[inline]
    fn coarsen_into(
        &self,
        key: Key,
        orbits: usize,
        block_of: &[u8; MAX_N],
        plan: &ProductPlan,
    ) -> Option<([Label; MAX_N], i64)> {
        let mut labels = [UNIT; MAX_N];
        let mut c = 1i64;
        for i in 0..orbits {
            let b = block_of[i] as usize;
            let (l, k) = self.alg.mul_basis(labels[b], key_label(key, i))?;
            labels[b] = l;
            c *= k;
        }
        debug_assert!(orbits == 0 || (plan.blocks as usize) <= MAX_N);
        Some((labels, c))
    }

    /// Multiplies block `B` by `e^{g(B)}` with `e = -24 [pt]`.
    #[inline]
    fn apply_euler(&self, plan: &ProductPlan, labels: &mut [Label; MAX_N], c: &mut i64) -> bool {
        for b in 0..plan.blocks as usize {
            match plan.defect[b] {
                0 => {}
                1 if labels[b] == UNIT => {
                    labels[b] = POINT;
                    *c *= -24;
                }
                _ => return false,
            }
        }
        true
    }

    /// Distributes `Δ[r]` of every block label over the `στ`-orbits it contains.
    fn refine_into(
        &self,
        plan: &ProductPlan,
        labels: &[Label; MAX_N],
        c: i64,
        acc: &mut FxHashMap<Key, i64>,
    ) {
        let blocks = plan.blocks as usize;
        let lists: Vec<&[(Vec<Label>, i64)]> = (0..blocks)
            .map(|b| self.alg.comul_terms(labels[b], plan.out_orbits[b].len()))
            .collect();
        let mut out_labels = [UNIT; MAX_N];
        let mut stack = vec![0usize; blocks];
        let base = (plan.result as u64) << PERM_SHIFT;
        // odometer over the cartesian product of the block expansions
        loop {
            let mut k = c;
            for b in 0..blocks {
                let (ls, v) = &lists[b][stack[b]];
                k *= v;
                for (pos, &o) in plan.out_orbits[b].iter().enumerate() {
                    out_labels[o as usize] = ls[pos];
                }
            }
            let mut key = base;
            for (i, &l) in out_labels
                .iter()
                .enumerate()
                .take(self.group.orbits[plan.result as usize].len())
            {
                key |= (l as u64) << (8 * i);
            }
            *acc.entry(key).or_insert(0) += k;
            let mut b = 0;
            loop {
                if b == blocks {
                    return;
                }
                stack[b] += 1;
                if stack[b] < lists[b].len() {
                    break;
                }
                stack[b] = 0;
                b += 1;
            }
        }
    }

    /// Transport along `τ`: `σ ↦ τστ⁻¹`, orbit labels moved by `τ`.
    pub fn act(&self, tau: &Perm, x: &SymElement) -> Result<SymElement> {
        self.check(x)?;
        let t = self.group.index_of(tau)?;
        let m = self.group.order();
        let tinv = self.group.inv[t] as usize;
        let mut out = self.zero();
        for (k, v) in x.terms() {
            let s = key_perm(k);
            let conj = self.group.mult[self.group.mult[t * m + s] as usize * m + tinv] as usize;
            let mut labels = [UNIT; MAX_N];
            for (i, o) in self.group.orbits[s].blocks().iter().enumerate() {
                let image = tau.apply(o[0]);
                labels[self.group.orbit_of[conj][image as usize] as usize] = key_label(k, i);
            }
            let r = self.group.orbits[conj].len();
            out.add_term(pack(conj, &labels[..r]), v.clone());
        }
        Ok(out)
    }

    /// True when `x` is fixed by every permutation.
    pub fn is_invariant(&self, x: &SymElement) -> Result<bool> {
        for p in &self.group.perms {
            if &self.act(p, x)? != x {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `∫_{S^[n]} x`: coefficient of `[pt]^{⊗n}·id` divided by `n!`.
    pub fn integrate(&self, x: &SymElement) -> Q {
        x.coefficient(pack(0, &vec![POINT; self.n()])) / factorial(self.n() as u32)
    }

    /// `∫ x·y` without forming the product; only the `τ = σ⁻¹` terms of
    /// the product reach the identity permutation.
    pub fn integrate_product(&self, x: &SymElement, y: &SymElement) -> Result<Q> {
        self.check(x)?;
        self.check(y)?;
        let n = self.n();
        let mut partners: Vec<Vec<(Label, i64)>> = vec![Vec::new(); crate::frobenius::BASIS_LEN];
        for (a, list) in partners.iter_mut().enumerate() {
            for b in 0..crate::frobenius::BASIS_LEN {
                let t = self.alg.pairing_basis(a as Label, b as Label);
                if t != 0 {
                    list.push((b as Label, t));
                }
            }
        }
        let mut xs: Vec<(Key, &Q)> = x.terms().collect();
        xs.sort_unstable_by_key(|(k, _)| *k);
        let mut total = Q::zero();
        let mut stack = [0usize; MAX_N];
        for (kx, cx) in xs {
            let s = key_perm(kx);
            let sinv = self.group.inv[s] as usize;
            let r = self.group.orbits[s].len();
            let lists: Vec<&[(Label, i64)]> = (0..r)
                .map(|i| partners[key_label(kx, i) as usize].as_slice())
                .collect();
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            stack[..r].fill(0);
            let mut sum = BigInt::zero();
            let mut sum_q = Q::zero();
            'odometer: loop {
                let mut key = (sinv as u64) << PERM_SHIFT;
                let mut k = 1i64;
                for i in 0..r {
                    let (l, t) = lists[i][stack[i]];
                    key |= (l as u64) << (8 * i);
                    k *= t;
                }
                if let Some(cy) = y.terms.get(&key) {
                    if cy.denom().is_one() {
                        sum += cy.numer() * k;
                    } else {
                        sum_q += cy * qi(k);
                    }
                }
                let mut i = 0;
                loop {
                    if i == r {
                        break 'odometer;
                    }
                    stack[i] += 1;
                    if stack[i] < lists[i].len() {
                        break;
                    }
                    stack[i] = 0;
                    i += 1;
                }
            }
            total += cx * (Q::from_integer(sum) + sum_q);
        }
        let sign = if n.is_multiple_of(2) {
            Q::one()
        } else {
            -Q::one()
        };
        Ok(total * sign / factorial(n as u32))
    }

    /// Sums the labelled partition over all `σ` of its cycle type.
    pub fn build_class(&self, lp: &LabelledPartition) -> Result<SymElement> {
        let n = self.n();
        if lp.n() != n {
            return Err(Error::InvalidArgument(format!(
                "labelled partition of {} used in S_{n}",
                lp.n()
            )));
        }
        let shape = lp.shape();
        let pairs = lp.pair_count();
        let mut seen: HashSet<(usize, Vec<u8>)> = HashSet::new();
        let mut symbolic: Vec<(usize, Vec<PartLabel>)> = Vec::new();
        for (s, p) in self.group.perms.iter().enumerate() {
            if p.cycle_type() != shape {
                continue;
            }
            let orbit_sizes: Vec<usize> =
                self.group.orbits[s].blocks().iter().map(Vec::len).collect();
            let mut assignment = vec![None; orbit_sizes.len()];
            let mut results = Vec::new();
            assign_parts(lp.parts(), 0, &orbit_sizes, &mut assignment, &mut results);
            for labels in results {
                let canon = canonical_codes(&labels, pairs);
                if seen.insert((s, canon)) {
                    symbolic.push((s, labels));
                }
            }
        }
        let mut out = self.zero();
        for (s, labels) in symbolic {
            self.expand_symbolic(s, &labels, pairs, &mut out);
        }
        Ok(out)
    }

    fn expand_symbolic(&self, s: usize, labels: &[PartLabel], pairs: usize, out: &mut SymElement) {
        let mut choice = vec![0usize; pairs];
        let mut concrete = vec![UNIT; labels.len()];
        loop {
            let mut coef = 1i64;
            for (i, l) in labels.iter().enumerate() {
                concrete[i] = match *l {
                    PartLabel::Unit => UNIT,
                    PartLabel::Point => POINT,
                    PartLabel::E(p) => self.casimir[choice[p as usize]].0,
                    PartLabel::EDual(p) => self.casimir[choice[p as usize]].1,
                };
            }
            for &c in &choice {
                coef *= self.casimir[c].2;
            }
            out.add_term(pack(s, &concrete), qi(coef));
            let mut i = 0;
            loop {
                if i == pairs {
                    return;
                }
                choice[i] += 1;
                if choice[i] < self.casimir.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Labels of the `σ`-orbits of one permutation as a [`BlockTensor`].
    pub fn restrict(&self, x: &SymElement, sigma: &Perm) -> Result<BlockTensor> {
        let s = self.group.index_of(sigma)?;
        let mut t = BlockTensor::new(self.group.orbits[s].clone());
        let r = self.group.orbits[s].len();
        for (k, v) in x.terms() {
            if key_perm(k) == s {
                t.add_term((0..r).map(|i| key_label(k, i)).collect(), v.clone());
            }
        }
        Ok(t)
    }

    /// `φ*`: multiplies labels of blocks of `t` lying in the same block of `coarser`.
    pub fn coarsen(&self, t: &BlockTensor, coarser: &OrbitPartition) -> Result<BlockTensor> {
        if !t.partition.refines(coarser) {
            return Err(Error::InvalidArgument(format!(
                "{coarser} does not coarsen {}",
                t.partition
            )));
        }
        let map: Vec<usize> = t
            .partition
            .blocks()
            .iter()
            .map(|b| coarser.block_of(b[0]))
            .collect();
        let mut out = BlockTensor::new(coarser.clone());
        'terms: for (labels, v) in &t.terms {
            let mut new = vec![UNIT; coarser.len()];
            let mut c = 1i64;
            for (i, &l) in labels.iter().enumerate() {
                match self.alg.mul_basis(new[map[i]], l) {
                    Some((m, k)) => {
                        new[map[i]] = m;
                        c *= k;
                    }
                    None => continue 'terms,
                }
            }
            out.add_term(new, v * qi(c));
        }
        Ok(out)
    }

    /// `φ_*`: applies `Δ[r]` to each block split into `r` blocks of `finer`.
    pub fn refine(&self, t: &BlockTensor, finer: &OrbitPartition) -> Result<BlockTensor> {
        if !finer.refines(&t.partition) {
            return Err(Error::InvalidArgument(format!(
                "{finer} does not refine {}",
                t.partition
            )));
        }
        let inside: Vec<Vec<usize>> = t
            .partition
            .blocks()
            .iter()
            .map(|b| {
                finer
                    .blocks()
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| b.contains(&f[0]))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut out = BlockTensor::new(finer.clone());
        for (labels, v) in &t.terms {
            let mut partial: Vec<(Vec<Label>, Q)> = vec![(vec![UNIT; finer.len()], v.clone())];
            for (b, &l) in labels.iter().enumerate() {
                let expansion = self
                    .alg
                    .comul_n(&crate::frobenius::K3Class::basis(l), inside[b].len())?;
                let mut next = Vec::new();
                for (ls, c) in &partial {
                    for (parts, k) in expansion.terms() {
                        let mut new = ls.clone();
                        for (pos, &fi) in inside[b].iter().enumerate() {
                            new[fi] = parts[pos];
                        }
                        next.push((new, c * k));
                    }
                }
                partial = next;
            }
            for (ls, c) in partial {
                out.add_term(ls, c);
            }
        }
        Ok(out)
    }

    /// Blockwise product of two tensors over the same partition.
    pub fn block_mul(&self, a: &BlockTensor, b: &BlockTensor) -> Result<BlockTensor> {
        if a.partition != b.partition {
            return Err(Error::InvalidArgument(
                "tensors over different partitions".into(),
            ));
        }
        let mut out = BlockTensor::new(a.partition.clone());
        for (la, ca) in &a.terms {
            'inner: for (lb, cb) in &b.terms {
                let mut labels = Vec::with_capacity(la.len());
                let mut c = 1i64;
                for (x, y) in la.iter().zip(lb) {
                    match self.alg.mul_basis(*x, *y) {
                        Some((l, k)) => {
                            labels.push(l);
                            c *= k;
                        }
                        None => continue 'inner,
                    }
                }
                out.add_term(labels, ca * cb * qi(c));
            }
        }
        Ok(out)
    }

    /// `T^{⊗r}` of a block tensor.
    pub fn block_counit(&self, t: &BlockTensor) -> Q {
        let mut total = Q::zero();
        for (labels, v) in &t.terms {
            if labels.iter().all(|&l| l == POINT) {
                let sign = if labels.len() % 2 == 0 {
                    Q::one()
                } else {
                    -Q::one()
                };
                total += v * sign;
            }
        }
        total
    }

    /// Human-readable listing, one term per line in key order.
    pub fn format(&self, x: &SymElement) -> String {
        let mut lines = Vec::new();
        for (k, v) in x.sorted_terms() {
            let (p, labels) = self.decode(k);
            let orbits = self.group.orbits[key_perm(k)].blocks();
            let factors: Vec<String> = orbits
                .iter()
                .zip(&labels)
                .map(|(o, l)| {
                    let pts: String = o.iter().map(|i| (i + 1).to_string()).collect();
                    format!("{}_{}", label_name(*l), pts)
                })
                .collect();
            lines.push(format!(
                "{} {}·{}",
                crate::rational::format_q(&v),
                factors.join("⊗"),
                p
            ));
        }
        lines.join("\n")
    }
}

/// All assignments of parts to orbits of equal size.
fn assign_parts(
    parts: &[(usize, PartLabel)],
    i: usize,
    orbit_sizes: &[usize],
    assignment: &mut Vec<Option<PartLabel>>,
    out: &mut Vec<Vec<PartLabel>>,
) {
    if i == parts.len() {
        out.push(
            assignment
                .iter()
                .map(|a| a.expect("all orbits labelled"))
                .collect(),
        );
        return;
    }
    let (size, label) = parts[i];
    for o in 0..orbit_sizes.len() {
        if orbit_sizes[o] == size && assignment[o].is_none() {
            assignment[o] = Some(label);
            assign_parts(parts, i + 1, orbit_sizes, assignment, out);
            assignment[o] = None;
        }
    }
}

/// Smallest code vector over relabelings of pairs and `e ↔ e^∨` swaps;
/// these leave the expanded element unchanged because `Σ_j e_j ⊗ e_j^∨`
/// is symmetric.
fn canonical_codes(labels: &[PartLabel], pairs: usize) -> Vec<u8> {
    let perms: Vec<Perm> = if pairs == 0 {
        vec![Perm::identity(0)]
    } else {
        Perm::all(pairs)
    };
    let mut best: Option<Vec<u8>> = None;
    for p in &perms {
        for mask in 0u32..(1 << pairs) {
            let codes: Vec<u8> = labels
                .iter()
                .map(|l| {
                    let mapped = match *l {
                        PartLabel::E(k) | PartLabel::EDual(k) => {
                            let nk = p.apply(k);
                            let swap = mask & (1 << k) != 0;
                            let is_e = matches!(l, PartLabel::E(_)) ^ swap;
                            if is_e {
                                PartLabel::E(nk)
                            } else {
                                PartLabel::EDual(nk)
                            }
                        }
                        other => other,
                    };
                    mapped.code()
                })
                .collect();
            if best.as_ref().is_none_or(|b| codes < *b) {
                best = Some(codes);
            }
        }
    }
    best.expect("at least one relabeling")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::K3Class;

    fn ring(n: usize) -> HilbRing {
        HilbRing::new(Arc::new(FrobeniusAlgebra::k3()), n).unwrap()
    }

    fn class(r: &HilbRing, s: &str) -> SymElement {
        r.build_class(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_labelled_partitions() {
        let lp: LabelledPartition = "I({e}_3,{e^}_1)".parse().unwrap();
        assert_eq!(lp.n(), 4);
        assert_eq!(lp.pair_count(), 1);
        assert_eq!(lp.to_string(), "I({e1}_3,{e1^}_1)");
        let h: LabelledPartition = "{e,e,e^,e^}_1".parse().unwrap();
        assert_eq!(h.pair_count(), 2);
        assert!("{e}_1".parse::<LabelledPartition>().is_err());
        assert!("{x}_1".parse::<LabelledPartition>().is_err());
        assert!("{1}_0".parse::<LabelledPartition>().is_err());
    }

    #[test]
    fn delta_is_sum_over_transpositions() {
        let r = ring(4);
        let d = class(&r, "{1}_2,{1,1}_1");
        assert_eq!(d.len(), 6);
        assert!(d.terms().all(|(_, v)| v == &qi(1)));
        assert_eq!(r.degree(&d), Degree::Pure(2));
        assert_eq!(class(&r, "{1,1,1,1}_1"), r.unit());
        assert!(r.build_class(&"{1}_2".parse().unwrap()).is_err());
    }

    #[test]
    fn unit_law_and_integration() {
        let r = ring(3);
        let d = class(&r, "{1}_2,{1}_1");
        assert_eq!(r.cup(&r.unit(), &d).unwrap(), d);
        assert_eq!(r.cup(&d, &r.unit()).unwrap(), d);
        assert_eq!(r.integrate(&r.unit()), qi(0));
        assert_eq!(r.integrate(&r.point_class()), qi(1));
    }

    #[test]
    fn invariance_of_built_classes() {
        let r = ring(4);
        for s in ["{e}_3,{e^}_1", "{e^}_2,{e,1}_1", "{1,1,e,e^}_1", "{e,e^}_2"] {
            let x = class(&r, s);
            assert!(r.is_invariant(&x).unwrap(), "{s}");
        }
    }

    #[test]
    fn act_is_a_group_action() {
        let r = ring(3);
        let x = class(&r, "{e^}_2,{e}_1");
        let mut y = x.clone();
        y.add_term(
            r.key(&Perm::from_cycles(3, &[&[1, 2]]).unwrap(), &[POINT, 5])
                .unwrap(),
            qi(2),
        );
        let tau = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let back = r.act(&tau, &r.act(&tau.inverse(), &y).unwrap()).unwrap();
        assert_eq!(back, y);
        assert_eq!(r.act(&Perm::identity(3), &y).unwrap(), y);
    }

    #[test]
    fn coarsen_and_refine_examples() {
        let r = ring(2);
        let a = r.algebra();
        let singles = OrbitPartition::singletons(2);
        let whole = OrbitPartition::from_blocks(2, vec![vec![0, 1]]).unwrap();
        // e_1 ⊗ e_1^∨ coarsens to p
        let mut t = BlockTensor::new(singles.clone());
        for (l, k) in a.middle_dual(0).terms() {
            t.add_term(vec![middle(0), l], k.clone());
        }
        let c = r.coarsen(&t, &whole).unwrap();
        assert_eq!(c.terms.len(), 1);
        assert_eq!(c.terms[&vec![POINT]], qi(1));
        // p splits as -p⊗p
        let mut p = BlockTensor::new(whole.clone());
        p.add_term(vec![POINT], qi(1));
        let split = r.refine(&p, &singles).unwrap();
        assert_eq!(split.terms.len(), 1);
        assert_eq!(split.terms[&vec![POINT, POINT]], qi(-1));
        assert_eq!(r.refine(&p, &whole).unwrap(), p);
        assert!(r.refine(&t, &whole).is_err());
        assert!(r.coarsen(&p, &singles).is_err());
        let _ = K3Class::zero();
    }

    #[test]
    fn delta_squared_matches_wxyz() {
        let r = ring(4);
        let d = class(&r, "{1}_2,{1,1}_1");
        let d2 = r.cup(&d, &d).unwrap();
        let w = class(&r, "{1}_3,{1}_1");
        let x = class(&r, "{1,1}_2");
        let y = class(&r, "{1,1,1,pt}_1");
        let z = class(&r, "{1,1,e,e^}_1");
        let expected =
            SymElement::combination(4, &[(qi(3), &w), (qi(2), &x), (qi(-3), &y), (qi(-1), &z)])
                .unwrap();
        assert_eq!(d2, expected);
    }

    #[test]
    fn fast_pairing_agrees_with_cup() {
        let r = ring(3);
        let d = class(&r, "{1}_2,{1}_1");
        let d2 = r.cup(&d, &d).unwrap();
        let d4 = r.cup(&d2, &d2).unwrap();
        let d6 = r.cup(&d4, &d2).unwrap();
        assert_eq!(r.integrate(&d6), r.integrate_product(&d4, &d2).unwrap());
        assert_eq!(r.integrate(&d6), qi(-960));
    }
}
