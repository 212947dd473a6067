//! Permutations of `{1..n}`, their orbit partitions, and the graph defect.
//!
//! Points are stored 0-based; text forms and constructors taking cycles use
//! the familiar 1-based notation.

use std::fmt;

use crate::{Error, Result};

/// Largest supported `n`.
pub const MAX_N: usize = 5;

/// A bijection of `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a bijection"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from 1-based cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n || used[a - 1] {
                    return Err(Error::InvalidArgument(format!("bad cycle {cycle:?}")));
                }
                used[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = (b - 1) as u8;
            }
        }
        Perm::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    pub fn orbits(&self) -> OrbitPartition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut block = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                block.push(i as u8);
                i = self.images[i] as usize;
            }
            block.sort_unstable();
            blocks.push(block);
        }
        OrbitPartition::from_sorted(n, blocks)
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.orbits().blocks().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// `|σ| = n - #orbits`.
    pub fn length(&self) -> usize {
        self.n() - self.orbits().len()
    }

    /// All permutations of `{0..n-1}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Perm {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n)
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("pivot");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with fixed points omitted, `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let mut seen = vec![false; self.n()];
        for start in 0..self.n() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i] as usize;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Partition of `{0..n-1}` into blocks, each sorted, ordered by minimum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitPartition {
    n: usize,
    blocks: Vec<Vec<u8>>,
}

impl OrbitPartition {
    fn from_sorted(n: usize, mut blocks: Vec<Vec<u8>>) -> Self {
        blocks.sort_unstable_by_key(|b| b[0]);
        OrbitPartition { n, blocks }
    }

    /// Validates that `blocks` cover `{0..n-1}` exactly once.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<u8>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidArgument("empty block".into()));
            }
            for &i in &b {
                let i = i as usize;
                if i >= n || seen[i] {
                    return Err(Error::InvalidArgument(
                        "blocks do not partition {0..n-1}".into(),
                    ));
                }
                seen[i] = true;
            }
            b.sort_unstable();
            sorted.push(b);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument(
                "blocks do not cover {0..n-1}".into(),
            ));
        }
        Ok(OrbitPartition::from_sorted(n, sorted))
    }

    pub fn singletons(n: usize) -> Self {
        OrbitPartition {
            n,
            blocks: (0..n as u8).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `i`.
    pub fn block_of(&self, i: u8) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&i))
            .expect("point outside partition")
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &OrbitPartition) -> OrbitPartition {
        assert_eq!(self.n, other.n);
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            let mut i = i;
            while parent[i] != r {
                let next = parent[i];
                parent[i] = r;
                i = next;
            }
            r
        }
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                let (x, y) = (
                    find(&mut parent, w[0] as usize),
                    find(&mut parent, w[1] as usize),
                );
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let mut groups: Vec<Vec<u8>> = vec![Vec::new(); self.n];
        for i in 0..self.n {
            let r = find(&mut parent, i);
            groups[r].push(i as u8);
        }
        OrbitPartition::from_sorted(
            self.n,
            groups.into_iter().filter(|g| !g.is_empty()).collect(),
        )
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &OrbitPartition) -> bool {
        self.n == coarser.n
            && self.blocks.iter().all(|b| {
                let k = coarser.block_of(b[0]);
                b.iter().all(|&i| coarser.blocks[k].contains(&i))
            })
    }

    /// Number of blocks of `self` contained in `block`.
    pub fn count_inside(&self, block: &[u8]) -> usize {
        self.blocks.iter().filter(|b| block.contains(&b[0])).count()
    }
}

impl fmt::Display for OrbitPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (m, i) in b.iter().enumerate() {
                if m > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// `g(σ,τ)(B) = ½(|B| + 2 - #σ-orbits - #τ-orbits - #στ-orbits in B)`.
pub fn graph_defect(sigma: &Perm, tau: &Perm, block: &[u8]) -> Result<u32> {
    let join = sigma.orbits().join(&tau.orbits());
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    if !join.blocks().contains(&sorted) {
        return Err(Error::InvalidArgument(format!(
            "{block:?} is not a block of the join"
        )));
    }
    let count = |p: &Perm| p.orbits().count_inside(&sorted) as i64;
    let twice = block.len() as i64 + 2 - count(sigma) - count(tau) - count(&sigma.compose(tau));
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::CheckFailed(format!(
            "graph defect 2g = {twice} for {sigma}, {tau}"
        )));
    }
    Ok((twice / 2) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks(p: &OrbitPartition) -> Vec<Vec<u8>> {
        p.blocks()
            .iter()
            .map(|b| b.iter().map(|i| i + 1).collect())
            .collect()
    }

    #[test]
    fn orbits_of_small_permutations() {
        assert_eq!(
            blocks(&Perm::identity(4).orbits()),
            vec![vec![1], vec![2], vec![3], vec![4]]
        );
        let t = Perm::from_cycles(4, &[&[1, 2]]).unwrap();
        assert_eq!(blocks(&t.orbits()), vec![vec![1, 2], vec![3], vec![4]]);
        let c = Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        assert_eq!(blocks(&c.orbits()), vec![vec![1, 2, 3], vec![4]]);
        assert_eq!(c.to_string(), "(1 2 3)");
        assert_eq!(c.cycle_type(), vec![3, 1]);
    }

    #[test]
    fn join_examples() {
        let a = Perm::from_cycles(4, &[&[1, 2]]).unwrap().orbits();
        let b = Perm::from_cycles(4, &[&[2, 3]]).unwrap().orbits();
        assert_eq!(blocks(&a.join(&b)), vec![vec![1, 2, 3], vec![4]]);
        assert_eq!(a.join(&a), a);
        assert_eq!(a.join(&OrbitPartition::singletons(4)), a);
        assert!(OrbitPartition::singletons(4).refines(&a));
        assert!(!a.refines(&b));
    }

    #[test]
    fn graph_defect_examples() {
        let id = Perm::identity(4);
        assert_eq!(graph_defect(&id, &id, &[2]).unwrap(), 0);
        let t12 = Perm::from_cycles(4, &[&[1, 2]]).unwrap();
        assert_eq!(graph_defect(&t12, &t12, &[0, 1]).unwrap(), 0);
        let t13 = Perm::from_cycles(4, &[&[1, 3]]).unwrap();
        assert_eq!(graph_defect(&t12, &t13, &[0, 1, 2]).unwrap(), 0);
        let c = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(graph_defect(&c, &c, &[0, 1, 2]).unwrap(), 1);
        assert_eq!(graph_defect(&c, &c.inverse(), &[0, 1, 2]).unwrap(), 0);
        assert!(graph_defect(&t12, &t13, &[0, 1]).is_err());
    }

    #[test]
    fn graph_defect_is_nonnegative_integer_on_s4() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        for s in &all {
            for t in &all {
                let join = s.orbits().join(&t.orbits());
                for b in join.blocks() {
                    graph_defect(s, t, b).unwrap();
                }
            }
        }
    }

    #[test]
    fn group_laws() {
        let all = Perm::all(3);
        for a in &all {
            assert!(a.compose(&a.inverse()).is_identity());
            for b in &all {
                for c in &all {
                    assert_eq!(a.compose(&b.compose(c)), a.compose(b).compose(c));
                }
            }
        }
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(OrbitPartition::from_blocks(3, vec![vec![0, 1]]).is_err());
    }
}
