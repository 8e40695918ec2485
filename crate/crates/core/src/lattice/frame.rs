//! A working basis of a sublattice together with its Gram matrix.
//!
//! Basis vectors are stored by their coordinates in the original basis, so
//! every elementary operation keeps both views in sync.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::IntMatrix;

#[derive(Debug, Clone)]
pub struct Frame {
    pub basis: Vec<Vec<BigInt>>,
    pub gram: Vec<Vec<BigInt>>,
    ambient: usize,
}

impl Frame {
    pub fn new(gram: &IntMatrix) -> Self {
        let n = gram.dim();
        Frame {
            basis: IntMatrix::identity(n).rows(),
            gram: gram.rows(),
            ambient: n,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn gram_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.gram).expect("frame gram is square")
    }

    /// `b_t <- b_t + q b_s`.
    pub fn add_multiple(&mut self, t: usize, s: usize, q: &BigInt) {
        assert_ne!(t, s);
        if q.is_zero() {
            return;
        }
        let n = self.len();
        let g = &mut self.gram;
        let new_tt = &g[t][t] + BigInt::from(2) * q * &g[t][s] + q * q * &g[s][s];
        for m in 0..n {
            if m != t {
                let v = &g[t][m] + q * &g[s][m];
                g[m][t] = v.clone();
                g[t][m] = v;
            }
        }
        g[t][t] = new_tt;
        let (src, dst) = if s < t {
            let (a, b) = self.basis.split_at_mut(t);
            (&a[s], &mut b[0])
        } else {
            let (a, b) = self.basis.split_at_mut(s);
            (&b[0], &mut a[t])
        };
        for (d, x) in dst.iter_mut().zip(src) {
            if !x.is_zero() {
                *d += q * x;
            }
        }
    }

    pub fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.basis.swap(i, j);
        self.gram.swap(i, j);
        for row in &mut self.gram {
            row.swap(i, j);
        }
    }

    pub fn negate(&mut self, i: usize) {
        for x in &mut self.basis[i] {
            *x = -&*x;
        }
        let n = self.len();
        for m in 0..n {
            if m != i {
                let v = -&self.gram[i][m];
                self.gram[m][i] = v.clone();
                self.gram[i][m] = v;
            }
        }
    }

    /// Drop basis vector `i`, returning its coordinates.
    pub fn remove(&mut self, i: usize) -> Vec<BigInt> {
        self.gram.remove(i);
        for row in &mut self.gram {
            row.remove(i);
        }
        self.basis.remove(i)
    }

    /// Make the primitive lattice vector with frame coordinates `v` a basis
    /// vector by Euclid-style unimodular column operations. Returns its
    /// index.
    pub fn make_basis_vector(&mut self, v: &[BigInt]) -> usize {
        let mut v = v.to_vec();
        loop {
            let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            let pivot = *support
                .iter()
                .min_by_key(|&&i| v[i].abs())
                .expect("nonzero vector");
            if support.len() == 1 {
                assert!(v[pivot].abs().is_one(), "vector is not primitive");
                if v[pivot].is_negative() {
                    self.negate(pivot);
                    v[pivot] = -&v[pivot];
                }
                return pivot;
            }
            for &j in &support {
                if j == pivot {
                    continue;
                }
                // v = v_p b_p + v_j b_j = v_p (b_p + q b_j) + (v_j - q v_p) b_j
                let q = v[j].div_floor(&v[pivot]);
                self.add_multiple(pivot, j, &q);
                v[j] = &v[j] - &q * &v[pivot];
            }
        }
    }

    /// The lattice vector with frame coordinates `coeffs`, in original
    /// coordinates.
    pub fn combine(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }
}
