//! Star-shaped negative-definite plumbing of a Seifert homology sphere, and
//! the Neumann-Siebenmann invariant computed from its spherical Wu class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, IntMatrix, LinalgError};
use crate::seifert::SeifertInvariants;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlumbingError {
    #[error("continued fraction needs gcd(p, q) = 1, got p = {p}, q = {q}")]
    NotCoprime { p: BigInt, q: BigInt },
    #[error("continued fraction needs 0 < q < p, got p = {p}, q = {q}")]
    OutOfRange { p: BigInt, q: BigInt },
    #[error("orbifold degree is not negative")]
    NotNegativeFibration,
    #[error("intersection form has determinant {0}, expected +-1")]
    NotUnimodular(BigInt),
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("sigma - w.w = {0} is not divisible by 8")]
    NotDivisibleBy8(BigInt),
    #[error("mu-bar out of machine range")]
    Overflow,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Hirzebruch-Jung expansion `p/q = c1 - 1/(c2 - 1/(... - 1/ck))`, all
/// `cj >= 2`.
pub fn neg_cont_frac(p: &BigInt, q: &BigInt) -> Result<Vec<BigInt>, PlumbingError> {
    if !q.is_positive() || q >= p {
        return Err(PlumbingError::OutOfRange {
            p: p.clone(),
            q: q.clone(),
        });
    }
    if !p.gcd(q).is_one() {
        return Err(PlumbingError::NotCoprime {
            p: p.clone(),
            q: q.clone(),
        });
    }
    let (mut p, mut q) = (p.clone(), q.clone());
    let mut out = Vec::new();
    while !q.is_zero() {
        // c = ceil(p / q); p/q = c - r/q with 0 <= r < q
        let c = p.div_ceil(&q);
        let r = &c * &q - &p;
        out.push(c);
        p = q;
        q = r;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlumbingGraph {
    /// Vertex weights; vertex 0 is the center.
    #[serde(serialize_with = "crate::json::big_ints")]
    pub weights: Vec<BigInt>,
    pub edges: Vec<(usize, usize)>,
    /// `arms[i]` lists the vertices of the arm of fiber `i`, starting next
    /// to the center.
    #[serde(skip)]
    pub arms: Vec<Vec<usize>>,
}

impl PlumbingGraph {
    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn intersection_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::diagonal(&self.weights);
        for &(i, j) in &self.edges {
            m[(i, j)] = BigInt::one();
            m[(j, i)] = BigInt::one();
        }
        m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| i == v || j == v)
            .count()
    }

    /// Relabel vertices: new vertex `k` is old vertex `perm[k]`.
    pub fn relabel(&self, perm: &[usize]) -> PlumbingGraph {
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        PlumbingGraph {
            weights: perm.iter().map(|&old| self.weights[old].clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(i, j)| (inverse[i], inverse[j]))
                .collect(),
            arms: self
                .arms
                .iter()
                .map(|arm| arm.iter().map(|&v| inverse[v]).collect())
                .collect(),
        }
    }

    pub fn to_dot(&self) -> String {
        self.to_dot_named("plumbing")
    }

    pub fn to_dot_named(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for (i, w) in self.weights.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{w}\"];\n"));
        }
        for &(i, j) in &self.edges {
            out.push_str(&format!("  v{i} -- v{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Canonical star-shaped plumbing: center weight `e0`, arm `i` carrying
/// `-c1, ..., -ck` from the expansion of `a_i / b_i`.
///
/// Unimodularity and negative definiteness are verified, not assumed.
pub fn build_plumbing(inv: &SeifertInvariants) -> Result<PlumbingGraph, PlumbingError> {
    if !inv.e.is_negative() {
        return Err(PlumbingError::NotNegativeFibration);
    }
    let mut weights = vec![inv.e0.clone()];
    let mut edges = Vec::new();
    let mut arms = Vec::with_capacity(inv.fibers.len());
    for fiber in &inv.fibers {
        let mut arm = Vec::new();
        let mut prev = 0;
        for c in neg_cont_frac(&fiber.a, &fiber.b)? {
            let v = weights.len();
            weights.push(-c);
            edges.push((prev, v));
            arm.push(v);
            prev = v;
        }
        arms.push(arm);
    }
    let graph = PlumbingGraph {
        weights,
        edges,
        arms,
    };
    let m = graph.intersection_matrix();
    let det = linalg::determinant(&m);
    if det.abs() != BigInt::one() {
        return Err(PlumbingError::NotUnimodular(det));
    }
    if !linalg::is_negative_definite(&m) {
        return Err(PlumbingError::NotNegativeDefinite);
    }
    Ok(graph)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WuReport {
    pub signature: i64,
    pub wu: Vec<u8>,
    #[serde(serialize_with = "crate::json::big_int")]
    pub wu_square: BigInt,
    pub mu_bar: i64,
    pub rokhlin: u8,
}

/// Neumann-Siebenmann invariant `(sigma - w.w) / 8` from the spherical Wu
/// class of the plumbing.
pub fn mu_bar(graph: &PlumbingGraph) -> Result<WuReport, PlumbingError> {
    mu_bar_of_form(&graph.intersection_matrix())
}

pub fn mu_bar_of_form(m: &IntMatrix) -> Result<WuReport, PlumbingError> {
    let signature = linalg::signature(m)?;
    let wu = linalg::wu_class(m)?;
    let lift: Vec<BigInt> = wu.iter().map(|&b| BigInt::from(b)).collect();
    let wu_square = m.quad_form(&lift);
    let diff = BigInt::from(signature) - &wu_square;
    let (q, r) = diff.div_rem(&BigInt::from(8));
    if !r.is_zero() {
        return Err(PlumbingError::NotDivisibleBy8(diff));
    }
    let mu_bar = q.to_i64().ok_or(PlumbingError::Overflow)?;
    Ok(WuReport {
        signature,
        wu,
        wu_square,
        mu_bar,
        rokhlin: mu_bar.rem_euclid(2) as u8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::normalize;
    use num_rational::BigRational;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn graph_of(m: &[i64]) -> PlumbingGraph {
        build_plumbing(&normalize(&ints(m)).unwrap()).unwrap()
    }

    /// Evaluate c1 - 1/(c2 - 1/(...)) exactly.
    fn evaluate(cs: &[BigInt]) -> BigRational {
        let mut acc: Option<BigRational> = None;
        for c in cs.iter().rev() {
            let c = BigRational::from_integer(c.clone());
            acc = Some(match acc {
                None => c,
                Some(tail) => c - tail.recip(),
            });
        }
        acc.unwrap()
    }

    #[test]
    fn cont_frac_examples() {
        let cf = |p: i64, q: i64| neg_cont_frac(&p.into(), &q.into()).unwrap();
        assert_eq!(cf(2, 1), ints(&[2]));
        assert_eq!(cf(3, 2), ints(&[2, 2]));
        let c = cf(11, 9);
        assert_eq!(c, ints(&[2, 2, 2, 2, 3]));
        assert_eq!(evaluate(&c), BigRational::new(11.into(), 9.into()));
    }

    #[test]
    fn cont_frac_errors() {
        assert!(matches!(
            neg_cont_frac(&4.into(), &2.into()),
            Err(PlumbingError::NotCoprime { .. })
        ));
        assert!(matches!(
            neg_cont_frac(&4.into(), &4.into()),
            Err(PlumbingError::OutOfRange { .. })
        ));
        assert!(matches!(
            neg_cont_frac(&4.into(), &0.into()),
            Err(PlumbingError::OutOfRange { .. })
        ));
    }

    #[test]
    fn e8_plumbing() {
        let g = graph_of(&[2, 3, 5]);
        assert_eq!(g.rank(), 8);
        assert!(g.weights.iter().all(|w| *w == BigInt::from(-2)));
        assert_eq!(g.degree(0), 3);
        let lens: Vec<usize> = g.arms.iter().map(|a| a.len()).collect();
        assert_eq!(lens, vec![1, 2, 4]);
        assert_eq!(linalg::determinant(&g.intersection_matrix()), BigInt::one());
    }

    #[test]
    fn plumbing_237() {
        let g = graph_of(&[2, 3, 7]);
        assert_eq!(g.weights, ints(&[-1, -2, -3, -7]));
        assert_eq!(g.edges, vec![(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            linalg::determinant(&g.intersection_matrix()).abs(),
            BigInt::one()
        );
    }

    #[test]
    fn plumbing_2311() {
        let g = graph_of(&[2, 3, 11]);
        assert_eq!(g.weights, ints(&[-2, -2, -2, -2, -2, -2, -2, -2, -3]));
        assert_eq!(g.arms, vec![vec![1], vec![2, 3], vec![4, 5, 6, 7, 8]]);
    }

    #[test]
    fn rejects_positive_degree() {
        let mut inv = normalize(&ints(&[2, 3, 5])).unwrap();
        inv.e = -inv.e;
        assert_eq!(
            build_plumbing(&inv),
            Err(PlumbingError::NotNegativeFibration)
        );
    }

    #[test]
    fn rejects_broken_normalization() {
        let mut inv = normalize(&ints(&[2, 3, 5])).unwrap();
        inv.e0 -= 1;
        inv.e -= BigRational::one();
        assert!(matches!(
            build_plumbing(&inv),
            Err(PlumbingError::NotUnimodular(_))
        ));
    }

    /// Brute force over all 0/1 vectors for the characteristic condition.
    fn brute_wu(m: &IntMatrix) -> Vec<Vec<u8>> {
        let n = m.dim();
        (0u32..1 << n)
            .map(|mask| (0..n).map(|i| ((mask >> i) & 1) as u8).collect::<Vec<u8>>())
            .filter(|x| {
                let xb: Vec<BigInt> = x.iter().map(|&b| BigInt::from(b)).collect();
                m.mul_vec(&xb)
                    .iter()
                    .zip(m.diag())
                    .all(|(a, d)| (a - d).is_even())
            })
            .collect()
    }

    #[test]
    fn wu_class_examples() {
        let m = graph_of(&[2, 3, 5]).intersection_matrix();
        assert_eq!(linalg::wu_class(&m).unwrap(), vec![0; 8]);

        let m = graph_of(&[2, 3, 7]).intersection_matrix();
        let sols = brute_wu(&m);
        assert_eq!(sols, vec![vec![0, 1, 1, 1]]);
        assert_eq!(linalg::wu_class(&m).unwrap(), sols[0]);

        // support: arm-1 leaf (1) and long-arm vertices 1, 3, 5 (4, 6, 8)
        let m = graph_of(&[2, 3, 11]).intersection_matrix();
        let sols = brute_wu(&m);
        assert_eq!(sols, vec![vec![0, 1, 0, 0, 1, 0, 1, 0, 1]]);
        assert_eq!(linalg::wu_class(&m).unwrap(), sols[0]);
    }

    #[test]
    fn mu_bar_examples() {
        let r = mu_bar(&graph_of(&[2, 3, 5])).unwrap();
        assert_eq!(
            (r.signature, r.wu_square.clone(), r.mu_bar),
            (-8, 0.into(), -1)
        );
        assert_eq!(r.rokhlin, 1);

        let r = mu_bar(&graph_of(&[2, 3, 7])).unwrap();
        assert_eq!(
            (r.signature, r.wu_square.clone(), r.mu_bar),
            (-4, (-12).into(), 1)
        );
        assert_eq!(r.rokhlin, 1);

        let r = mu_bar(&graph_of(&[2, 3, 11])).unwrap();
        assert_eq!(
            (r.signature, r.wu_square.clone(), r.mu_bar),
            (-9, (-9).into(), 0)
        );
        assert_eq!(r.rokhlin, 0);
    }

    #[test]
    fn relabel_preserves_mu_bar() {
        let g = graph_of(&[2, 3, 11]);
        let perm = vec![8, 3, 0, 5, 1, 7, 2, 6, 4];
        let h = g.relabel(&perm);
        assert_eq!(
            h.intersection_matrix(),
            g.intersection_matrix().permuted(&perm)
        );
        assert_eq!(mu_bar(&h).unwrap().mu_bar, 0);
    }

    #[test]
    fn dot_export() {
        let dot = graph_of(&[2, 3, 7]).to_dot();
        assert!(dot.contains("v3 [label=\"-7\"];"));
        assert!(dot.contains("v0 -- v2;"));
    }
}
