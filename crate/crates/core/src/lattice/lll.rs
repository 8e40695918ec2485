//! Integral LLL reduction (delta = 3/4) driven by the Gram matrix only.
//!
//! All Gram-Schmidt data is kept as integers: `d[i]` is the Gram
//! determinant of the first `i` vectors and `lam[k][j] = d[j] * mu_kj`.
//! Indices below are 1-based to match the usual presentation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::frame::Frame;

pub fn lll(frame: &mut Frame) {
    let n = frame.len();
    if n < 2 {
        return;
    }
    let mut st = State {
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n + 1]; n + 1],
        kmax: 1,
    };
    st.d[0] = BigInt::from(1);
    st.d[1] = frame.gram[0][0].clone();
    assert!(
        st.d[1].is_positive(),
        "Gram matrix is not positive definite"
    );

    let mut k = 2;
    while k <= n {
        if k > st.kmax {
            st.kmax = k;
            for j in 1..=k {
                let mut u = frame.gram[k - 1][j - 1].clone();
                for i in 1..j {
                    u = (&st.d[i] * &u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i - 1];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    assert!(u.is_positive(), "Gram matrix is not positive definite");
                    st.d[k] = u;
                }
            }
        }
        st.reduce(frame, k, k - 1);
        let lhs = BigInt::from(4) * &st.d[k] * &st.d[k - 2];
        let rhs = BigInt::from(3) * &st.d[k - 1] * &st.d[k - 1]
            - BigInt::from(4) * &st.lam[k][k - 1] * &st.lam[k][k - 1];
        if lhs < rhs {
            st.swap(frame, k);
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                st.reduce(frame, k, l);
            }
            k += 1;
        }
    }
}

struct State {
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
    kmax: usize,
}

impl State {
    fn reduce(&mut self, frame: &mut Frame, k: usize, l: usize) {
        let two_lam = BigInt::from(2) * &self.lam[k][l];
        if two_lam.abs() <= self.d[l] {
            return;
        }
        // nearest integer to lam / d
        let q = (&two_lam + &self.d[l]).div_floor(&(BigInt::from(2) * &self.d[l]));
        frame.add_multiple(k - 1, l - 1, &-&q);
        self.lam[k][l] -= &q * &self.d[l];
        for i in 1..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, frame: &mut Frame, k: usize) {
        frame.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = std::mem::take(&mut self.lam[k][j]);
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lm = self.lam[k][k - 1].clone();
        let b = (&self.d[k - 2] * &self.d[k] + &lm * &lm) / &self.d[k - 1];
        for i in k + 1..=self.kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lm * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&b * &t + &lm * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, IntMatrix};
    use num_rational::BigRational;
    use num_traits::One;

    /// Recompute Gram-Schmidt from scratch with rationals and check size
    /// reduction and the Lovasz condition.
    fn assert_reduced(g: &IntMatrix) {
        let n = g.dim();
        let (l, d) = linalg::ldl(g).expect("positive definite");
        let half = BigRational::new(1.into(), 2.into());
        let three_quarters = BigRational::new(3.into(), 4.into());
        for i in 0..n {
            for j in 0..i {
                assert!(l[i][j].abs() <= half, "mu[{i}][{j}] = {}", l[i][j]);
            }
        }
        for k in 1..n {
            let mu = &l[k][k - 1];
            assert!(d[k] >= (&three_quarters - mu * mu) * &d[k - 1]);
        }
    }

    #[test]
    fn reduces_skewed_basis() {
        // Z^3 in the basis (1,0,0), (7,1,0), (3,-5,1)
        let u = IntMatrix::from_rows(&[vec![1i64, 7, 3], vec![0, 1, -5], vec![0, 0, 1]]).unwrap();
        let g = IntMatrix::identity(3).congruent(&u);
        let mut f = Frame::new(&g);
        lll(&mut f);
        assert_reduced(&f.gram_matrix());
        assert_eq!(f.gram_matrix(), IntMatrix::identity(3));
        let b = IntMatrix::from_rows(&f.basis).unwrap();
        assert!(linalg::determinant(&b).abs().is_one());
    }

    #[test]
    fn gram_tracks_basis() {
        let g = IntMatrix::from_rows(&[
            vec![10i64, 7, 3, 1],
            vec![7, 9, 2, 4],
            vec![3, 2, 8, 1],
            vec![1, 4, 1, 6],
        ])
        .unwrap();
        let mut f = Frame::new(&g);
        lll(&mut f);
        let b = IntMatrix::from_rows(&f.basis).unwrap();
        assert_eq!(g.congruent(&b.transpose()), f.gram_matrix());
        assert_reduced(&f.gram_matrix());
    }
}
