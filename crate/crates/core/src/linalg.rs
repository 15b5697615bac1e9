//! Dense exact matrices: fraction-free elimination over fields, a
//! division-free determinant over commutative rings, integer rank, and rank
//! modulo a prime.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::scalar::{FieldElem, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    /// Reorders rows and columns: entry (i, j) of the result is entry
    /// (perm[i], perm[j]) of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(perm[i], perm[j])].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Matrix<T> {
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let zero = self.data.first().or(rhs.data.first()).expect("nonempty matrices").zero_like();
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, k| {
                let a = &self[(i, k)];
                if a.is_zero() {
                    acc
                } else {
                    acc.plus(&a.times(&rhs[(k, j)]))
                }
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    /// Determinant without divisions (Berkowitz), valid over any commutative
    /// ring. `one` supplies the unit of the ring for the empty matrix.
    pub fn det_division_free(&self, one: &T) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let p = charpoly(self, one);
        let c = p[self.rows].clone();
        if self.rows % 2 == 1 {
            c.negated()
        } else {
            c
        }
    }
}

/// Coefficients of det(xI - A), leading coefficient first.
fn charpoly<T: Ring>(a: &Matrix<T>, one: &T) -> Vec<T> {
    let n = a.rows;
    if n == 0 {
        return vec![one.clone()];
    }
    let sub = Matrix::from_fn(n - 1, n - 1, |i, j| a[(i + 1, j + 1)].clone());
    let q = charpoly(&sub, one);
    let zero = one.zero_like();
    let r: Vec<T> = (1..n).map(|j| a[(0, j)].clone()).collect();
    let mut v: Vec<T> = (1..n).map(|i| a[(i, 0)].clone()).collect();
    let mut col = Vec::with_capacity(n + 1);
    col.push(one.clone());
    col.push(a[(0, 0)].negated());
    for _ in 2..=n {
        let dot = r.iter().zip(&v).fold(zero.clone(), |acc, (x, y)| acc.plus(&x.times(y)));
        col.push(dot.negated());
        v = (0..n - 1).map(|i| (0..n - 1).fold(zero.clone(), |acc, j| acc.plus(&sub[(i, j)].times(&v[j])))).collect();
    }
    (0..=n).map(|i| (0..=i.min(n - 1)).fold(zero.clone(), |acc, j| acc.plus(&col[i - j].times(&q[j])))).collect()
}

/// Result of fraction-free Gaussian elimination.
#[derive(Clone, Debug)]
pub struct Elimination<T> {
    pub rank: usize,
    /// Determinant for square input (zero when singular).
    pub det: Option<T>,
    pub pivot_columns: Vec<usize>,
}

impl<T: FieldElem> Matrix<T> {
    /// Bareiss elimination. Every intermediate entry is a minor of the input,
    /// and each division is exact.
    pub fn bareiss(&self) -> Elimination<T> {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        if rows == 0 || cols == 0 {
            return Elimination { rank: 0, det: None, pivot_columns: Vec::new() };
        }
        let mut prev = a.data[0].one_like();
        let mut r = 0;
        let mut negate = false;
        let mut pivots = Vec::new();
        for k in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[(i, k)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    a.data.swap(p * cols + j, r * cols + j);
                }
                negate = !negate;
            }
            let pivot = a[(r, k)].clone();
            let prev_inv = prev.inverse().expect("previous pivot is nonzero");
            for i in r + 1..rows {
                let lead = a[(i, k)].clone();
                for j in k + 1..cols {
                    let lhs = pivot.times(&a[(i, j)]);
                    let upd = if lead.is_zero() { lhs } else { lhs.minus(&lead.times(&a[(r, j)])) };
                    a[(i, j)] = upd.times(&prev_inv);
                }
                a[(i, k)] = lead.zero_like();
            }
            prev = pivot;
            pivots.push(k);
            r += 1;
        }
        let det = if rows == cols {
            Some(if r < rows {
                prev.zero_like()
            } else if negate {
                prev.negated()
            } else {
                prev
            })
        } else {
            None
        };
        Elimination { rank: r, det, pivot_columns: pivots }
    }

    pub fn rank(&self) -> usize {
        self.bareiss().rank
    }

    pub fn det(&self) -> T {
        self.bareiss().det.expect("determinant of a non-square matrix")
    }
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let inv = |x: u64| {
        let (mut b, mut e, mut acc) = (x, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for k in 0..ncols {
        let Some(piv) = (r..nrows).find(|&i| a[i][k] != 0) else { continue };
        a.swap(piv, r);
        let pinv = inv(a[r][k]);
        let pivot_row = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            let f = mul(row[k], pinv);
            if f == 0 {
                continue;
            }
            for j in k..ncols {
                row[j] = (row[j] + p - mul(f, pivot_row[j])) % p;
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank_integer(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for k in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !a[i][k].is_zero()) else { continue };
        a.swap(piv, r);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..ncols {
                let mut v = pivot * &row[j];
                if !lead.is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

/// Serializable view of a matrix of displayable entries.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub size: usize,
    pub entries: Vec<Vec<String>>,
}

impl<T: Clone + std::fmt::Display> From<&Matrix<T>> for MatrixJson {
    fn from(m: &Matrix<T>) -> Self {
        MatrixJson {
            size: m.rows,
            entries: (0..m.rows).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{DeltaPolynomial, Field};

    fn qmat(rows: &[&[i64]]) -> Matrix<crate::scalar::Scalar> {
        let f = Field::rationals();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect())
    }

    /// Leibniz expansion, used as an independent check.
    fn leibniz(m: &Matrix<crate::scalar::Scalar>) -> crate::scalar::Scalar {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        let f = m[(0, 0)].field().clone();
        let mut acc = f.zero();
        for p in perms(n) {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut t = f.one();
            for (i, &pi) in p.iter().enumerate() {
                t = &t * &m[(i, pi)];
            }
            acc = if inversions % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    #[test]
    fn determinants_agree_with_leibniz() {
        let m = qmat(&[&[2, -1, 0, 3], &[1, 4, 5, -2], &[0, 0, 7, 1], &[3, 1, -1, 2]]);
        let expected = leibniz(&m);
        assert_eq!(m.det(), expected);
        assert_eq!(m.det_division_free(&m[(0, 0)].one_like()), expected);
    }

    #[test]
    fn pivoting_and_rank() {
        let m = qmat(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]);
        assert_eq!(m.rank(), 2);
        assert!(m.det().is_zero());
        let m = qmat(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det(), Field::rationals().int(-1));
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 7), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![3, 4]], 2), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![3, 4]], 7), 2);
    }

    #[test]
    fn symbolic_two_by_two() {
        let f = Field::rationals();
        let d0 = DeltaPolynomial::var(&f, 2, 0);
        let d1 = DeltaPolynomial::var(&f, 2, 1);
        let m = Matrix::from_rows(vec![vec![d0.clone(), d1.clone()], vec![d1.clone(), d0.clone()]]);
        let det = m.det_division_free(&d0.one_like());
        assert_eq!(det, d0.times(&d0).minus(&d1.times(&d1)));
    }

    #[test]
    fn integer_rank_matches_field_rank() {
        let rows: Vec<Vec<i64>> =
            vec![vec![2, 4, 6, 8], vec![1, 2, 3, 4], vec![0, 0, 5, 7], vec![3, 6, 14, 19], vec![0, 0, 0, 0]];
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let as_refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        assert_eq!(rank_integer(big), qmat(&as_refs).rank());
        assert_eq!(rank_integer(vec![]), 0);
    }
}
