//! Exact Fincke-Pohst enumeration with optional parity constraints.
//!
//! The form is decomposed as `x^T G x = sum_t D_t (x_t + c_t)^2`, where
//! `c_t` depends only on `x_0, ..., x_{t-1}`. Coordinates are fixed in index
//! order and, within each level, in ascending numeric order, so the first
//! point found is the lexicographically smallest one inside the ball.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::linalg::{self, IntMatrix};

pub struct Enumerator {
    diag: Vec<BigRational>,
    /// `links[t]` holds `(s, coeff)` with `s < t`; `c_t = sum coeff * x_s`.
    links: Vec<Vec<(usize, BigRational)>>,
}

impl Enumerator {
    /// `gram` must be positive definite.
    pub fn new(gram: &IntMatrix) -> Option<Self> {
        let n = gram.dim();
        // Decompose the index-reversed form so that the triangular
        // dependency runs from low to high original indices.
        let reversed: Vec<usize> = (0..n).rev().collect();
        let (l, d) = linalg::ldl(&gram.permuted(&reversed))?;
        let diag = (0..n).map(|t| d[n - 1 - t].clone()).collect();
        let links = (0..n)
            .map(|t| {
                let j = n - 1 - t;
                (j + 1..n)
                    .filter(|&i| !l[i][j].is_zero())
                    .map(|i| (n - 1 - i, l[i][j].clone()))
                    .collect()
            })
            .collect();
        Some(Enumerator { diag, links })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Lexicographically first `x` with `x^T G x <= radius`, `x_t = parity_t
    /// (mod 2)` when a parity vector is given, and `x != 0` when
    /// `skip_zero` is set.
    pub fn first(
        &self,
        radius: &BigInt,
        parity: Option<&[u8]>,
        skip_zero: bool,
    ) -> Option<Vec<BigInt>> {
        let n = self.dim();
        if n == 0 {
            return (!skip_zero && !radius.is_negative()).then(Vec::new);
        }
        let budget = BigRational::from_integer(radius.clone());
        let x = vec![BigInt::zero(); n];
        let top = self.candidates(0, &x, &budget, parity);
        top.into_par_iter().find_map_first(|v| {
            let mut x = x.clone();
            let rest = &budget - self.cost(0, &x, &v);
            x[0] = v;
            self.descend(1, &mut x, &rest, parity, skip_zero)
        })
    }

    fn center(&self, t: usize, x: &[BigInt]) -> BigRational {
        self.links[t]
            .iter()
            .filter(|(s, _)| !x[*s].is_zero())
            .fold(BigRational::zero(), |acc, (s, c)| {
                acc + c * BigRational::from_integer(x[*s].clone())
            })
    }

    fn cost(&self, t: usize, x: &[BigInt], v: &BigInt) -> BigRational {
        let u = BigRational::from_integer(v.clone()) + self.center(t, x);
        &self.diag[t] * &u * &u
    }

    /// Admissible values of `x_t`, ascending.
    fn candidates(
        &self,
        t: usize,
        x: &[BigInt],
        budget: &BigRational,
        parity: Option<&[u8]>,
    ) -> Vec<BigInt> {
        if budget.is_negative() {
            return Vec::new();
        }
        let c = self.center(t, x);
        let d = &self.diag[t];
        let fits = |v: &BigInt| {
            let u = BigRational::from_integer(v.clone()) + &c;
            d * &u * &u <= *budget
        };
        // |v + c| <= sqrt(budget / d) < s + 1
        let s = (budget / d).floor().to_integer().sqrt();
        let target = -&c;
        let mut lo = target.floor().to_integer() - &s - 1;
        let mut hi = target.ceil().to_integer() + &s + 1;
        while lo <= hi && !fits(&lo) {
            lo += 1;
        }
        while hi >= lo && !fits(&hi) {
            hi -= 1;
        }
        let step = match parity {
            Some(p) => {
                if lo.is_odd() != (p[t] == 1) {
                    lo += 1;
                }
                2
            }
            None => 1,
        };
        let mut out = Vec::new();
        while lo <= hi {
            out.push(lo.clone());
            lo += step;
        }
        out
    }

    fn descend(
        &self,
        t: usize,
        x: &mut Vec<BigInt>,
        budget: &BigRational,
        parity: Option<&[u8]>,
        skip_zero: bool,
    ) -> Option<Vec<BigInt>> {
        if t == self.dim() {
            if skip_zero && x.iter().all(Zero::is_zero) {
                return None;
            }
            return Some(x.clone());
        }
        for v in self.candidates(t, x, budget, parity) {
            let rest = budget - self.cost(t, x, &v);
            x[t] = v;
            if let Some(found) = self.descend(t + 1, x, &rest, parity, skip_zero) {
                return Some(found);
            }
        }
        x[t] = BigInt::zero();
        None
    }
}
