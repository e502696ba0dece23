//! Brute-force ground truth: exact partition functions by summing over all
//! `2^n` plus-sets, exact coefficient vectors, and root reports.

pub mod roots;

pub use roots::polynomial_roots;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeActivity, Hypergraph};
use crate::numeric::{horner, KahanSum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Subsets per work unit. Fixed so the summation tree does not depend on the
/// number of worker threads.
const BLOCK_BITS: u32 = 12;

/// Coefficients `c_0..c_n` of `Z(lambda) = sum_i c_i lambda^i`; `c_i = (-1)^i e_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CoefficientVector(Vec<Complex64>);

impl CoefficientVector {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        horner(&self.0, lambda)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Elementary symmetric values `e_i = (-1)^i c_i`.
    pub fn elementary(&self) -> Vec<Complex64> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c } else { -c })
            .collect()
    }
}

/// Coefficients, roots and their distance from the unit circle.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroReport {
    pub coefficients: CoefficientVector,
    pub roots: Vec<Complex64>,
    /// `|Z(r_i)|` per root.
    pub residuals: Vec<f64>,
    pub max_circle_deviation: f64,
}

impl ZeroReport {
    pub fn from_coefficients(coefficients: CoefficientVector, tol_residual: f64) -> Result<Self> {
        let roots = polynomial_roots(coefficients.as_slice(), tol_residual)?;
        let residuals = roots.iter().map(|&r| coefficients.eval(r).norm()).collect();
        let max_circle_deviation = roots
            .iter()
            .map(|r| (r.norm() - 1.0).abs())
            .fold(0.0, f64::max);
        Ok(Self {
            coefficients,
            roots,
            residuals,
            max_circle_deviation,
        })
    }
}

enum EdgeEval {
    Ising { mask: u64, beta: f64 },
    Table { vertices: Vec<u32>, table: Vec<Complex64> },
}

/// Precomputed per-edge evaluators for `phi_e(S)` with `S` given as a bitmask.
struct SubsetWeights {
    edges: Vec<EdgeEval>,
}

impl SubsetWeights {
    fn new(g: &Hypergraph) -> Self {
        let edges = g
            .edges()
            .iter()
            .map(|e| match e.activity() {
                EdgeActivity::IsingBeta(beta) => EdgeEval::Ising {
                    mask: e.vertices().iter().fold(0u64, |m, &v| m | 1 << v),
                    beta: *beta,
                },
                EdgeActivity::SpinTable(t) => EdgeEval::Table {
                    vertices: e.vertices().to_vec(),
                    table: t.values().to_vec(),
                },
            })
            .collect();
        Self { edges }
    }

    /// `prod_{e meets S} phi_e(S)`.
    #[inline]
    fn weight(&self, set: u64) -> Complex64 {
        let mut w = Complex64::new(1.0, 0.0);
        for e in &self.edges {
            match e {
                EdgeEval::Ising { mask, beta } => {
                    let inter = set & mask;
                    if inter != 0 && inter != *mask {
                        w *= *beta;
                    }
                }
                EdgeEval::Table { vertices, table } => {
                    let mut local = 0usize;
                    for (j, &v) in vertices.iter().enumerate() {
                        local |= ((set >> v & 1) as usize) << j;
                    }
                    w *= table[local];
                }
            }
        }
        w
    }
}

fn check_cap(g: &Hypergraph, cap: usize) -> Result<()> {
    if g.n() > cap || g.n() > 62 {
        return Err(Error::OracleCap {
            n: g.n(),
            cap: cap.min(62),
        });
    }
    Ok(())
}

/// Sums `term(S)` over all subsets, block by block, in a fixed tree.
fn sum_subsets<F>(n: usize, width: usize, term: F) -> Vec<Complex64>
where
    F: Fn(u64, &mut [KahanSum]) + Sync,
{
    let total: u64 = 1 << n;
    let block = 1u64 << BLOCK_BITS.min(n as u32);
    let blocks = total / block;
    let partials: Vec<Vec<KahanSum>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = vec![KahanSum::new(); width];
            for s in b * block..(b + 1) * block {
                term(s, &mut acc);
            }
            acc
        })
        .collect();
    let mut acc = vec![KahanSum::new(); width];
    for part in &partials {
        for (a, p) in acc.iter_mut().zip(part) {
            a.merge(p);
        }
    }
    acc.iter().map(KahanSum::value).collect()
}

/// `Z(lambda) = sum_S prod_{e meets S} phi_e(S) lambda^|S|`.
pub fn exact_partition(g: &Hypergraph, lambda: Complex64, cap: usize) -> Result<Complex64> {
    check_cap(g, cap)?;
    let w = SubsetWeights::new(g);
    let mut powers = vec![Complex64::new(1.0, 0.0); g.n() + 1];
    for i in 1..=g.n() {
        powers[i] = powers[i - 1] * lambda;
    }
    let sum = sum_subsets(g.n(), 1, |s, acc| {
        acc[0].add(w.weight(s) * powers[s.count_ones() as usize]);
    });
    Ok(sum[0])
}

/// `c_i = sum_{|S| = i} prod_{e meets S} phi_e(S)`.
pub fn exact_coefficients(g: &Hypergraph, cap: usize) -> Result<CoefficientVector> {
    check_cap(g, cap)?;
    let w = SubsetWeights::new(g);
    let coeffs = sum_subsets(g.n(), g.n() + 1, |s, acc| {
        acc[s.count_ones() as usize].add(w.weight(s));
    });
    Ok(CoefficientVector(coeffs))
}

/// Multivariate Ising partition function
/// `sum_S prod_{e cut by S} beta_e prod_{i in S} lambda_i`.
pub fn exact_multivariate(g: &Hypergraph, lambdas: &[Complex64], cap: usize) -> Result<Complex64> {
    check_cap(g, cap)?;
    if lambdas.len() != g.n() {
        return Err(Error::ActivityCount {
            expected: g.n(),
            got: lambdas.len(),
        });
    }
    if let Some(i) = g.edges().iter().position(|e| e.activity().ising_beta().is_none()) {
        return Err(Error::NotIsing(i));
    }
    let w = SubsetWeights::new(g);
    let sum = sum_subsets(g.n(), 1, |s, acc| {
        let mut term = w.weight(s);
        for (i, l) in lambdas.iter().enumerate() {
            if s >> i & 1 == 1 {
                term *= l;
            }
        }
        acc[0].add(term);
    });
    Ok(sum[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn edgeless_is_binomial() {
        let g = Hypergraph::edgeless(3);
        let l = Complex64::new(0.3, -0.7);
        let z = exact_partition(&g, l, 24).unwrap();
        assert!((z - (c(1.0) + l).powu(3)).norm() < 1e-14);
    }

    #[test]
    fn single_edge_values() {
        let beta = 0.37;
        let g = Hypergraph::ising(2, &[(&[0, 1], beta)]).unwrap();
        let l = Complex64::new(0.4, 0.9);
        let z = exact_partition(&g, l, 24).unwrap();
        assert!((z - (l * l + 2.0 * beta * l + 1.0)).norm() < 1e-14);
        let cv = exact_coefficients(&g, 24).unwrap();
        assert_eq!(cv.as_slice(), &[c(1.0), c(2.0 * beta), c(1.0)]);
    }

    #[test]
    fn three_edge_coefficients() {
        let beta = -0.2;
        let g = Hypergraph::ising(3, &[(&[0, 1, 2], beta)]).unwrap();
        let cv = exact_coefficients(&g, 24).unwrap();
        let expected = [1.0, 3.0 * beta, 3.0 * beta, 1.0];
        for (got, want) in cv.as_slice().iter().zip(expected) {
            assert!((got - c(want)).norm() < 1e-15);
        }
        let g = Hypergraph::ising(3, &[(&[0, 1, 2], 1.0)]).unwrap();
        assert_eq!(
            exact_coefficients(&g, 24).unwrap(),
            CoefficientVector::from_real(&[1.0, 3.0, 3.0, 1.0])
        );
    }

    #[test]
    fn unit_activities_give_binomial() {
        let g = Hypergraph::ising(4, &[(&[0, 1], 1.0), (&[1, 2, 3], 1.0), (&[0, 3], 1.0)]).unwrap();
        let l = c(0.7);
        let z = exact_partition(&g, l, 24).unwrap();
        assert!((z - c(1.7f64.powi(4))).norm() < 1e-12);
    }

    #[test]
    fn multivariate_edge() {
        let beta = 0.6;
        let g = Hypergraph::ising(2, &[(&[0, 1], beta)]).unwrap();
        let (l1, l2) = (Complex64::new(0.2, 1.0), Complex64::new(-1.5, 0.3));
        let z = exact_multivariate(&g, &[l1, l2], 24).unwrap();
        assert!((z - (l1 * l2 + beta * l1 + beta * l2 + 1.0)).norm() < 1e-14);
        assert!(exact_multivariate(&g, &[l1], 24).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = Hypergraph::edgeless(10);
        assert_eq!(
            exact_coefficients(&g, 8),
            Err(Error::OracleCap { n: 10, cap: 8 })
        );
    }

    #[test]
    fn zero_report_for_single_edge() {
        let report =
            ZeroReport::from_coefficients(CoefficientVector::from_real(&[1.0, 0.6, 1.0]), 1e-10)
                .unwrap();
        assert_eq!(report.roots.len(), 2);
        assert!(report.max_circle_deviation < 1e-14);
        for r in &report.roots {
            assert!((r.re + 0.3).abs() < 1e-14);
            assert!((r.im.abs() - 0.91f64.sqrt()).abs() < 1e-14);
        }
    }
}
