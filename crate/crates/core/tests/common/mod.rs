//! Test-only reference computations shared by the integration suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use seifert_psc::linalg::{self, IntMatrix};
use seifert_psc::plumbing::{build_plumbing, PlumbingGraph};
use seifert_psc::seifert::{normalize, SeifertInvariants};

pub fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn invariants(m: &[i64]) -> SeifertInvariants {
    normalize(&ints(m)).unwrap()
}

pub fn graph(m: &[i64]) -> PlumbingGraph {
    build_plumbing(&invariants(m)).unwrap()
}

pub fn form(m: &[i64]) -> IntMatrix {
    graph(m).intersection_matrix()
}

/// `d` from the Laufer-sequence tau function of a negative Seifert homology
/// sphere: `d = (K^2 + s)/4 - 2 min tau`, with
/// `tau(l+1) - tau(l) = 1 - e0 l - sum ceil(l b_i / a_i)` and `K` the
/// adjunction class `K.E_v = -E_v^2 - 2` of the star-shaped plumbing.
pub fn d_from_tau(m: &[i64]) -> i64 {
    let inv = invariants(m);
    let g = build_plumbing(&inv).unwrap();
    let mat = g.intersection_matrix();
    let s = mat.dim() as i64;

    let p: Vec<BigRational> = g
        .weights
        .iter()
        .map(|w| BigRational::from_integer(-w - 2))
        .collect();
    let minv = linalg::inverse(&mat).unwrap();
    let mut k2 = BigRational::zero();
    for i in 0..p.len() {
        for j in 0..p.len() {
            k2 += &p[i] * &minv[i][j] * &p[j];
        }
    }
    let k2 = k2.to_integer().to_i64().unwrap();

    let e0 = inv.e0.to_i64().unwrap();
    let fibers: Vec<(i64, i64)> = inv
        .fibers
        .iter()
        .map(|f| (f.a.to_i64().unwrap(), f.b.to_i64().unwrap()))
        .collect();
    let order: i64 = fibers.iter().map(|f| f.0).product();
    let horizon = order * fibers.len() as i64 + 1;
    let (mut tau, mut min_tau) = (0i64, 0i64);
    for l in 0..horizon {
        let delta = 1
            - e0 * l
            - fibers
                .iter()
                .map(|&(a, b)| Integer::div_ceil(&(l * b), &a))
                .sum::<i64>();
        tau += delta;
        min_tau = min_tau.min(tau);
    }
    assert_eq!((k2 + s).rem_euclid(4), 0);
    (k2 + s) / 4 - 2 * min_tau
}

/// Random coprime triple with product at most `limit`.
pub fn coprime_triple(rng: &mut ChaCha8Rng, limit: i64) -> [i64; 3] {
    loop {
        let p = rng.gen_range(2..=20);
        let q = rng.gen_range(2..=60);
        let rmax = limit / (p * q);
        if rmax < 2 {
            continue;
        }
        let r = rng.gen_range(2..=rmax);
        if p.gcd(&q) == 1 && p.gcd(&r) == 1 && q.gcd(&r) == 1 {
            return [p, q, r];
        }
    }
}

/// Random unimodular matrix as a product of elementary shears and swaps.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            u[(0, 0)] = BigInt::from(-1);
        }
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        match rng.gen_range(0..3) {
            0 => {
                // column i += c * column j
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                for r in 0..n {
                    let v = &u[(r, j)] * &c;
                    u[(r, i)] += v;
                }
            }
            1 => {
                for r in 0..n {
                    let t = u[(r, i)].clone();
                    u[(r, i)] = u[(r, j)].clone();
                    u[(r, j)] = t;
                }
            }
            _ => {
                for r in 0..n {
                    u[(r, i)] = -&u[(r, i)];
                }
            }
        }
    }
    u
}
