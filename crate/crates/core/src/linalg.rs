//! Dense exact linear algebra over the rationals.
//!
//! Reduced echelon forms use ordinary rational Gauss-Jordan elimination.
//! Rank and determinant go through fraction-free (Bareiss) elimination on
//! a row-scaled integer copy, which keeps intermediate entries bounded by
//! minors of the input.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{common_denominator, format_q, Q};
use crate::Error;

/// Dense rectangular matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

/// Outcome of [`RatMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Q>),
    /// `particular + span(kernel)`.
    Affine {
        particular: Vec<Q>,
        kernel: Vec<Vec<Q>>,
    },
}

impl Solution {
    pub fn unique(self) -> Result<Vec<Q>, Error> {
        match self {
            Solution::Unique(v) => Ok(v),
            Solution::Affine { kernel, .. } => Err(Error::Singular(format!(
                "solution set has dimension {}",
                kernel.len()
            ))),
        }
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>, Error> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &m[(r, j)];
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank via fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss(self.integer_rows()).0
    }

    /// Determinant via fraction-free elimination.
    pub fn det(&self) -> Result<Q, Error> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let scales: Vec<BigInt> = (0..self.rows)
            .map(|i| common_denominator(self.row(i)))
            .collect();
        let (_, det) = bareiss(self.integer_rows());
        let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(Q::new(det, scale))
    }

    /// Kernel basis, one vector per free column, each scaled so that its first
    /// nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                normalize_leading(&mut v);
                v
            })
            .collect()
    }

    /// Solves `self * x = rhs`.
    pub fn solve(&self, rhs: &[Q]) -> Result<Solution, Error> {
        if rhs.len() != self.rows {
            return Err(Error::Shape(format!(
                "{} equations but right-hand side of length {}",
                self.rows,
                rhs.len()
            )));
        }
        let aug = RatMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent("linear system has no solution".into()));
        }
        let mut particular = vec![Q::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            particular[pc] = r[(row, self.cols)].clone();
        }
        if pivots.len() == self.cols {
            Ok(Solution::Unique(particular))
        } else {
            Ok(Solution::Affine {
                particular,
                kernel: self.kernel_basis(),
            })
        }
    }

    pub fn inverse(&self) -> Result<RatMatrix, Error> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = RatMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular("matrix is not invertible".into()));
        }
        Ok(RatMatrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let d = common_denominator(row);
                row.iter()
                    .map(|x| (x * Q::from_integer(d.clone())).to_integer())
                    .collect()
            })
            .collect()
    }
}

/// Fraction-free elimination. Returns the rank and, for square input, the
/// determinant (zero when singular).
pub fn bareiss(mut m: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]).div_floor(&prev);
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    let det = if rows == cols && r == rows {
        if sign < 0 {
            -prev
        } else {
            prev
        }
    } else {
        BigInt::zero()
    };
    (r, det)
}

/// Scales a vector so that its first nonzero entry is 1.
pub fn normalize_leading(v: &mut [Q]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x /= &lead;
        }
    }
}

/// Integer multiple of `v` with coprime entries and the sign of `v`'s first
/// nonzero entry preserved.
pub fn clear_denominators(v: &[Q]) -> Vec<BigInt> {
    let d = common_denominator(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(d.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix shapes")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_q).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{qi, qr};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(a.mul_vec(&k[0]).unwrap(), vec![qi(0); 3]);
        assert_eq!(k[0][0], qi(1));
    }

    #[test]
    fn det_matches_bareiss_and_rref() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(a.det().unwrap(), qi(4));
        let b = RatMatrix::from_rows(vec![vec![qr(1, 2), qi(1)], vec![qi(3), qr(1, 3)]]).unwrap();
        assert_eq!(b.det().unwrap(), qr(1, 6) - qi(3));
    }

    #[test]
    fn solve_reports_inconsistency_and_affine_sets() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(matches!(
            a.solve(&[qi(1), qi(3)]),
            Err(Error::Inconsistent(_))
        ));
        match a.solve(&[qi(1), qi(2)]).unwrap() {
            Solution::Affine { particular, kernel } => {
                assert_eq!(particular, vec![qi(1), qi(0)]);
                assert_eq!(kernel, vec![vec![qi(1), qi(-1)]]);
            }
            other => panic!("expected affine, got {other:?}"),
        }
        let id = RatMatrix::identity(3);
        let v = vec![qi(4), qr(-1, 7), qi(0)];
        assert_eq!(id.solve(&v).unwrap().unique().unwrap(), v);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &a.inverse().unwrap(), RatMatrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn clearing_denominators() {
        let v = vec![qi(1), qr(-7, 5), qr(31, 60), qr(-1, 15)];
        let ints: Vec<i64> = clear_denominators(&v)
            .into_iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(ints, vec![60, -84, 31, -4]);
    }
}
