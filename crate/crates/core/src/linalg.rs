//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no
//! floating point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("determinant is even, the mod-2 system has no unique solution")]
    EvenDeterminant,
}

/// Dense square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LinalgError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { n, data })
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<BigInt> {
        (0..self.n).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.n, x.len(), "dimension mismatch");
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `x^T M x`.
    pub fn quad_form(&self, x: &[BigInt]) -> BigInt {
        self.mul_vec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// `P^T M P` where `P` sends basis vector `i` to `perm[i]`, i.e. the
    /// matrix of the same form with vertices relabelled.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(perm[i], perm[j])].clone();
            }
        }
        out
    }

    /// `U^T M U`.
    pub fn congruent(&self, u: &IntMatrix) -> Self {
        u.transpose().mul(self).mul(u)
    }

    fn to_rational(&self) -> Vec<Vec<BigRational>> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({}x{}) [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading principal minors `D_1, ..., D_n` via Bareiss elimination without
/// pivoting. Stops after the first vanishing minor, so the result may be
/// shorter than `n`.
pub fn leading_principal_minors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.dim();
    let mut a = m.rows();
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        minors.push(a[k][k].clone());
        if a[k][k].is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    minors
}

/// Sylvester's criterion: `(-1)^k D_k > 0` for every leading minor.
pub fn is_negative_definite(m: &IntMatrix) -> bool {
    if !m.is_symmetric() {
        return false;
    }
    let minors = leading_principal_minors(m);
    minors.len() == m.dim()
        && minors.iter().enumerate().all(|(k, d)| {
            // k is zero-based, the minor has size k + 1
            if k % 2 == 0 {
                d.is_negative()
            } else {
                d.is_positive()
            }
        })
}

pub fn is_positive_definite(m: &IntMatrix) -> bool {
    let minors = leading_principal_minors(m);
    m.is_symmetric() && minors.len() == m.dim() && minors.iter().all(|d| d.is_positive())
}

/// Signature of a nonsingular symmetric matrix by exact symmetric
/// elimination over the rationals. A nonzero diagonal entry is used as a 1x1
/// pivot when available; otherwise a 2x2 block `[[0, a], [a, 0]]` is split
/// off, contributing one positive and one negative square.
pub fn signature(m: &IntMatrix) -> Result<i64, LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let mut s = m.to_rational();
    let mut sig = 0i64;
    while !s.is_empty() {
        let k = s.len();
        if let Some(p) = (0..k).find(|&i| !s[i][i].is_zero()) {
            let piv = s[p][p].clone();
            sig += if piv.is_positive() { 1 } else { -1 };
            let col: Vec<BigRational> = (0..k).map(|i| s[i][p].clone()).collect();
            let next: Vec<Vec<BigRational>> = (0..k)
                .filter(|&i| i != p)
                .map(|i| {
                    (0..k)
                        .filter(|&j| j != p)
                        .map(|j| {
                            if col[i].is_zero() || col[j].is_zero() {
                                s[i][j].clone()
                            } else {
                                &s[i][j] - &col[i] * &col[j] / &piv
                            }
                        })
                        .collect()
                })
                .collect();
            s = next;
        } else {
            // All diagonal entries vanish; pick an off-diagonal pivot.
            let (p, q) = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .find(|&(i, j)| !s[i][j].is_zero())
                .ok_or(LinalgError::Singular)?;
            let a = s[p][q].clone();
            // inverse of [[0, a], [a, 0]] is [[0, 1/a], [1/a, 0]]
            let next: Vec<Vec<BigRational>> = (0..k)
                .filter(|&i| i != p && i != q)
                .map(|i| {
                    (0..k)
                        .filter(|&j| j != p && j != q)
                        .map(|j| {
                            let corr = (&s[i][p] * &s[q][j] + &s[i][q] * &s[p][j]) / &a;
                            &s[i][j] - corr
                        })
                        .collect()
                })
                .collect();
            s = next;
        }
    }
    Ok(sig)
}

/// The unique `x` in `{0,1}^n` with `M x = diag(M) (mod 2)`.
///
/// Solved by Gaussian elimination over the field with two elements. Fails
/// with [`LinalgError::EvenDeterminant`] when the system is not uniquely
/// solvable, which happens exactly when `det M` is even.
pub fn wu_class(m: &IntMatrix) -> Result<Vec<u8>, LinalgError> {
    let n = m.dim();
    let bit = |x: &BigInt| -> u8 {
        if x.is_odd() {
            1
        } else {
            0
        }
    };
    // augmented rows: n coefficient bits followed by the right-hand side
    let mut rows: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut r: Vec<u8> = m.row(i).iter().map(bit).collect();
            r.push(bit(&m[(i, i)]));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| rows[r][col] == 1)
            .ok_or(LinalgError::EvenDeterminant)?;
        rows.swap(col, pivot);
        for r in 0..n {
            if r != col && rows[r][col] == 1 {
                let (src, dst) = if r < col {
                    let (a, b) = rows.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d ^= *s;
                }
            }
        }
    }
    Ok(rows.iter().map(|r| r[n]).collect())
}

/// Inverse over the rationals by Gauss-Jordan elimination.
pub fn inverse(m: &IntMatrix) -> Result<Vec<Vec<BigRational>>, LinalgError> {
    let n = m.dim();
    let mut a = m.to_rational();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(LinalgError::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Ok(inv)
}

/// Exact `G = L D L^T` for a positive-definite matrix, no pivoting.
/// `l[i][j]` is populated for `j < i` only.
pub fn ldl(m: &IntMatrix) -> Option<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
    let n = m.dim();
    let a = m.to_rational();
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = a[j][j].clone();
        for k in 0..j {
            if !l[j][k].is_zero() {
                dj -= &l[j][k] * &l[j][k] * &d[k];
            }
        }
        if !dj.is_positive() {
            return None;
        }
        for i in j + 1..n {
            let mut v = a[i][j].clone();
            for k in 0..j {
                if !l[i][k].is_zero() && !l[j][k].is_zero() {
                    v -= &l[i][k] * &l[j][k] * &d[k];
                }
            }
            l[i][j] = v / &dj;
        }
        d[j] = dj;
    }
    Some((l, d))
}
