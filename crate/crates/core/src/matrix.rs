//! Dense square matrices and LU factorization with partial pivoting.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Reciprocal condition estimates below this are treated as singular.
pub const SINGULAR_RCOND: f64 = 1e-12;

/// Dense, row-major, square matrix of finite reals.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                pos / n,
                pos % n
            )));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "dimension must be at least 1");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self[(i, i)])
    }

    /// Iterates `(i, j, m_ij)` over entries with `i != j`.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, &v)| (k / n, k % n, v))
            .filter(|&(i, j, _)| i != j)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// `I + s·self`.
    pub fn identity_plus(&self, s: f64) -> Self {
        let mut m = self.scaled(s);
        for i in 0..self.n {
            m[(i, i)] += 1.0;
        }
        m
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        self.rows()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Submatrix keeping the rows and columns listed in `idx`, in order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> SquareMatrix {
        let k = idx.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                data.push(self[(i, j)]);
            }
        }
        SquareMatrix { n: k, data }
    }

    /// `P M Pᵀ` where the permutation sends index `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SquareMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(perm[i], perm[j])] = self[(i, j)];
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.rows()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// LU factorization `P A = L U` with partial pivoting.
///
/// A zero pivot does not abort the factorization; the determinant is then
/// exactly zero and [`Lu::solve`] refuses to run.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
    norm_one: f64,
}

impl Lu {
    pub fn new(a: &SquareMatrix) -> Self {
        Self::from_slice(a.n, a.as_slice().to_vec(), a.norm_one())
    }

    fn from_slice(n: usize, mut lu: Vec<f64>, norm_one: f64) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                if f != 0.0 {
                    for j in k + 1..n {
                        lu[i * n + j] -= f * lu[k * n + j];
                    }
                }
            }
        }
        Self {
            n,
            lu,
            perm,
            sign,
            singular,
            norm_one,
        }
    }

    pub fn determinant(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        (0..self.n).fold(self.sign, |d, k| d * self.lu[k * self.n + k])
    }

    pub fn is_exactly_singular(&self) -> bool {
        self.singular
    }

    /// Solves `A x = b`; requires a factorization without zero pivots.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: b.len(),
            });
        }
        if self.singular {
            return Err(Error::SingularSystem { rcond: 0.0 });
        }
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        Ok(x)
    }

    /// Reciprocal 1-norm condition number, `1 / (‖A‖₁ ‖A⁻¹‖₁)`.
    ///
    /// Computed exactly from the n columns of the inverse; matrices here are small.
    pub fn rcond(&self) -> f64 {
        if self.singular || self.norm_one == 0.0 {
            return 0.0;
        }
        let n = self.n;
        let mut inv_norm: f64 = 0.0;
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = match self.solve(&e) {
                Ok(c) => c,
                Err(_) => return 0.0,
            };
            let s: f64 = col.iter().map(|v| v.abs()).sum();
            if !s.is_finite() {
                return 0.0;
            }
            inv_norm = inv_norm.max(s);
        }
        1.0 / (self.norm_one * inv_norm)
    }
}

/// Determinant via LU; used for principal minors.
pub fn determinant(a: &SquareMatrix) -> f64 {
    Lu::new(a).determinant()
}

/// Solves `A x = b`, failing with [`Error::SingularSystem`] when the
/// reciprocal condition estimate falls below [`SINGULAR_RCOND`].
pub fn solve(a: &SquareMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let lu = Lu::new(a);
    let rcond = lu.rcond();
    if rcond < SINGULAR_RCOND {
        return Err(Error::SingularSystem { rcond });
    }
    lu.solve(b)
}

pub(crate) fn norm_inf_vec(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(SquareMatrix::new(0, vec![]).is_err());
        assert!(SquareMatrix::new(2, vec![1.0; 3]).is_err());
        assert!(SquareMatrix::new(1, vec![f64::NAN]).is_err());
        assert!(SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn determinant_matches_hand_values() {
        let m = SquareMatrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap();
        assert!((determinant(&m) + 3.0).abs() < 1e-15);
        let m = SquareMatrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
            .unwrap();
        assert!((determinant(&m) - 1.0).abs() < 1e-15);
        let m = SquareMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(determinant(&m), 0.0);
    }

    #[test]
    fn solve_and_singularity() {
        let m = SquareMatrix::from_rows(&[[1.0, 0.5], [0.5, 1.0]]).unwrap();
        let x = solve(&m, &[1.0, 1.0]).unwrap();
        assert!((x[0] - 2.0 / 3.0).abs() < 1e-15 && (x[1] - 2.0 / 3.0).abs() < 1e-15);

        let s = SquareMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert!(matches!(solve(&s, &[1.0, 1.0]), Err(Error::SingularSystem { .. })));
    }

    #[test]
    fn rcond_of_identity_is_one() {
        let lu = Lu::new(&SquareMatrix::identity(4));
        assert!((lu.rcond() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn permuted_matches_explicit_permutation() {
        let m = SquareMatrix::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]])
            .unwrap();
        let p = m.permuted(&[2, 0, 1]);
        assert_eq!(p[(2, 2)], 1.0);
        assert_eq!(p[(2, 0)], 2.0);
        assert_eq!(p[(0, 1)], 6.0);
    }
}
