//! Lee-Yang ranges for Ising hyperedges, the Suzuki-Fisher condition,
//! numerical circle certification and off-circle witnesses.

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeActivity, Hyperedge, Hypergraph};
use crate::numeric::binomial;
use crate::oracle::{exact_coefficients, polynomial_roots, CoefficientVector, ZeroReport};
use crate::Config;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// Relative slack at closed range boundaries.
const BOUNDARY_SLACK: f64 = 1e-12;

/// Closed interval of Ising `beta` values for which every hypergraph with
/// edges of size `k` has all its zeros on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LyRange {
    pub k: usize,
    pub lo: f64,
    pub hi: f64,
    pub closed: bool,
}

impl LyRange {
    pub fn contains(&self, beta: f64) -> bool {
        let lo = self.lo - BOUNDARY_SLACK * self.lo.abs();
        let hi = self.hi + BOUNDARY_SLACK * self.hi.abs();
        if self.closed {
            lo <= beta && beta <= hi
        } else {
            self.lo < beta && beta < self.hi
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// `(tau0, tau1) = (2^(k-1) cos^(k-1)(pi/(k-1)), 2^(k-1))`.
pub fn tau_bounds(k: usize) -> Result<(f64, f64)> {
    if k < 3 {
        return Err(Error::EdgeSize { k, min: 3 });
    }
    let two = 2f64.powi(k as i32 - 1);
    let tau0 = two * (PI / (k - 1) as f64).cos().powi(k as i32 - 1);
    Ok((tau0, two))
}

pub fn ising_ly_range(k: usize) -> Result<LyRange> {
    let (lo, hi) = match k {
        0 | 1 => return Err(Error::EdgeSize { k, min: 2 }),
        2 => (-1.0, 1.0),
        _ => {
            let (tau0, tau1) = tau_bounds(k)?;
            (-1.0 / (tau1 - 1.0), 1.0 / (tau0 + 1.0))
        }
    };
    Ok(LyRange {
        k,
        lo,
        hi,
        closed: true,
    })
}

/// `|phi(+...+)| >= (1/4) sum_sigma |phi(sigma)|` together with
/// `phi(sigma) = conj(phi(-sigma))`.
pub fn suzuki_fisher_check(e: &Hyperedge) -> bool {
    let k = e.size();
    let table = e.activity().to_table(k);
    let top = table.get((1 << k) - 1).norm();
    let total: f64 = table.values().iter().map(|v| v.norm()).sum();
    e.is_symmetric() && top * (1.0 + BOUNDARY_SLACK) >= 0.25 * total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    IsingRange,
    SuzukiFisher,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeVerdict {
    pub edge: usize,
    pub size: usize,
    pub criterion: Criterion,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<LyRange>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceCheck {
    pub edges: Vec<EdgeVerdict>,
    pub all_pass: bool,
}

/// Ising edges are tested against [`ising_ly_range`], tables against
/// [`suzuki_fisher_check`].
pub fn check_instance(g: &Hypergraph) -> InstanceCheck {
    let edges: Vec<EdgeVerdict> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| match e.activity() {
            EdgeActivity::IsingBeta(beta) => {
                let range = ising_ly_range(e.size()).expect("edges have at least two vertices");
                EdgeVerdict {
                    edge: i,
                    size: e.size(),
                    criterion: Criterion::IsingRange,
                    beta: Some(*beta),
                    range: Some(range),
                    pass: range.contains(*beta),
                }
            }
            EdgeActivity::SpinTable(_) => EdgeVerdict {
                edge: i,
                size: e.size(),
                criterion: Criterion::SuzukiFisher,
                beta: None,
                range: None,
                pass: suzuki_fisher_check(e),
            },
        })
        .collect();
    let all_pass = edges.iter().all(|v| v.pass);
    InstanceCheck { edges, all_pass }
}

#[derive(Debug, Clone, Serialize)]
pub struct CircleReport {
    #[serde(flatten)]
    pub zeros: ZeroReport,
    pub tol_circle: f64,
    /// Whether [`check_instance`] accepts every edge.
    pub in_range: bool,
    /// `max_circle_deviation <= tol_circle`.
    pub on_circle: bool,
    /// `on_circle`, required only when `in_range`.
    pub pass: bool,
}

pub fn verify_zeros_on_circle(g: &Hypergraph, cfg: &Config) -> Result<CircleReport> {
    let coefficients = exact_coefficients(g, cfg.oracle_cap)?;
    let zeros = ZeroReport::from_coefficients(coefficients, cfg.tol_residual)?;
    let in_range = check_instance(g).all_pass;
    let on_circle = zeros.max_circle_deviation <= cfg.tol_circle;
    Ok(CircleReport {
        zeros,
        tol_circle: cfg.tol_circle,
        in_range,
        on_circle,
        pass: on_circle || !in_range,
    })
}

/// `P_k(0) = 1 > 0 > P_k(1)` and the real root it brackets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignChange {
    pub p_at_0: f64,
    pub p_at_1: f64,
    pub root: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TightWitness {
    pub k: usize,
    /// Edge size of the polynomial actually used (2 when `beta > 1`).
    pub k_used: usize,
    pub beta: f64,
    pub polynomial: CoefficientVector,
    pub roots: Vec<Complex64>,
    pub witness_root: Complex64,
    /// `||witness_root| - 1|`.
    pub deviation: f64,
    pub residual: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_change: Option<SignChange>,
}

/// Coefficients of `beta (1 + z)^k + (1 - beta)(1 + z^k)`.
pub fn single_edge_polynomial(k: usize, beta: f64) -> CoefficientVector {
    let mut c: Vec<f64> = (0..=k).map(|i| beta * binomial(k, i)).collect();
    c[0] += 1.0 - beta;
    c[k] += 1.0 - beta;
    CoefficientVector::from_real(&c)
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if (f(mid) > 0.0) == (fa > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// A root of `P_k` off the unit circle for `beta` outside the range.
pub fn tight_example(k: usize, beta: f64, tol: f64) -> Result<TightWitness> {
    let range = ising_ly_range(k)?;
    if range.contains(beta) || beta == 1.0 {
        return Err(Error::InsideRange { k, beta });
    }
    let k_used = if beta > 1.0 { 2 } else { k };
    let polynomial = single_edge_polynomial(k_used, beta);
    let scale = polynomial.max_abs();
    let roots = polynomial_roots(polynomial.as_slice(), 1e-8)?;

    let sign_change = (beta < range.lo).then(|| {
        let p = |x: f64| polynomial.eval(Complex64::new(x, 0.0)).re;
        SignChange {
            p_at_0: p(0.0),
            p_at_1: p(1.0),
            root: bisect(p, 0.0, 1.0),
        }
    });
    if let Some(sc) = &sign_change {
        debug_assert!(sc.p_at_0 > 0.0 && sc.p_at_1 < 0.0);
    }

    let (witness_root, deviation) = roots
        .iter()
        .map(|&r| (r, (r.norm() - 1.0).abs()))
        .fold((Complex64::new(1.0, 0.0), -1.0), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    let threshold = 10.0 * tol;
    if deviation <= threshold {
        return Err(Error::NoWitness {
            threshold,
            best: deviation,
        });
    }
    let residual = polynomial.eval(witness_root).norm() / scale;
    Ok(TightWitness {
        k,
        k_used,
        beta,
        polynomial,
        roots,
        witness_root,
        deviation,
        residual,
        threshold,
        sign_change,
    })
}

/// `max prod_i cos(theta_i)` over `theta in [-pi/2, pi/2]^k` with
/// `sum theta_i = m pi`, which is `cos^k(m pi / k)`.
pub fn cos_product_max(k: usize, m: i64) -> Result<f64> {
    if k == 0 || 2 * m.unsigned_abs() > k as u64 {
        return Err(Error::Infeasible { k, m });
    }
    Ok((m as f64 * PI / k as f64).cos().powi(k as i32))
}

/// Projection onto `{theta in [-h, h]^k : sum theta = target}`.
fn project(theta: &mut [f64], target: f64, h: f64) {
    let shifted = |s: f64| -> f64 { theta.iter().map(|t| (t - s).clamp(-h, h)).sum() };
    let min = theta.iter().copied().fold(f64::INFINITY, f64::min);
    let max = theta.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mut lo, mut hi) = (min - h - 1.0, max + h + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if shifted(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    for t in theta.iter_mut() {
        *t = (*t - s).clamp(-h, h);
    }
}

fn log_objective(theta: &[f64]) -> f64 {
    theta.iter().map(|t| t.cos().max(f64::MIN_POSITIVE).ln()).sum()
}

fn ascend(theta: &mut [f64], target: f64, h: f64) {
    let mut step = 0.1;
    let mut value = log_objective(theta);
    for _ in 0..5000 {
        let mut next: Vec<f64> = theta.iter().map(|t| (t - step * t.tan()).clamp(-h, h)).collect();
        project(&mut next, target, h);
        let next_value = log_objective(&next);
        if next_value > value {
            let moved: f64 = next.iter().zip(theta.iter()).map(|(a, b)| (a - b).abs()).sum();
            theta.copy_from_slice(&next);
            value = next_value;
            step *= 1.2;
            if moved < 1e-15 {
                break;
            }
        } else {
            step *= 0.5;
            if step < 1e-16 {
                break;
            }
        }
    }
}

/// Numerical maximum of the cosine product by projected gradient ascent
/// from the symmetric point and `restarts` seeded random starts.
pub fn cos_product_max_numeric(k: usize, m: i64, restarts: usize, seed: u64) -> Result<f64> {
    cos_product_max(k, m)?;
    let target = m as f64 * PI;
    let h = PI / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::NEG_INFINITY;
    for r in 0..=restarts {
        let mut theta: Vec<f64> = if r == 0 {
            vec![target / k as f64; k]
        } else {
            (0..k).map(|_| rng.gen_range(-h..=h)).collect()
        };
        project(&mut theta, target, h);
        ascend(&mut theta, target, h);
        let value: f64 = theta.iter().map(|t| t.cos()).product();
        best = best.max(value);
    }
    Ok(best)
}

/// Closed form checked against the numerical maximizer within `1e-6`.
pub fn cos_product_max_verified(k: usize, m: i64, seed: u64) -> Result<f64> {
    let closed = cos_product_max(k, m)?;
    let numeric = cos_product_max_numeric(k, m, 100, seed)?;
    if (closed - numeric).abs() > 1e-6 {
        return Err(Error::CosineMismatch { closed, numeric });
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_constants() {
        let r2 = ising_ly_range(2).unwrap();
        assert_eq!((r2.lo, r2.hi), (-1.0, 1.0));
        let r3 = ising_ly_range(3).unwrap();
        assert!((r3.lo + 1.0 / 3.0).abs() < 1e-15 && (r3.hi - 1.0).abs() < 1e-15);
        let r4 = ising_ly_range(4).unwrap();
        assert!((r4.lo + 1.0 / 7.0).abs() < 1e-15 && (r4.hi - 0.5).abs() < 1e-15);
        assert!(ising_ly_range(1).is_err());
        assert!(tau_bounds(2).is_err());
    }

    #[test]
    fn tau_examples() {
        let (t0, t1) = tau_bounds(4).unwrap();
        assert!((t0 - 1.0).abs() < 1e-14);
        assert_eq!(t1, 8.0);
        let (t0, t1) = tau_bounds(3).unwrap();
        assert!(t0.abs() < 1e-15);
        assert_eq!(t1, 4.0);
    }

    #[test]
    fn closed_boundaries() {
        let r3 = ising_ly_range(3).unwrap();
        assert!(r3.contains(-1.0 / 3.0));
        assert!(r3.contains(1.0));
        assert!(!r3.contains(-0.34));
    }

    #[test]
    fn suzuki_fisher_ising() {
        let e = |k: usize, beta: f64| Hyperedge::ising((0..k as u32).collect(), beta).unwrap();
        assert!(suzuki_fisher_check(&e(2, 1.0)));
        assert!(!suzuki_fisher_check(&e(2, 1.01)));
        assert!(suzuki_fisher_check(&e(3, 1.0 / 3.0)));
        assert!(suzuki_fisher_check(&e(3, -1.0 / 3.0)));
        assert!(!suzuki_fisher_check(&e(3, 0.34)));
    }

    #[test]
    fn suzuki_fisher_rejects_zero_top() {
        let values = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.1, 0.0),
            Complex64::new(0.1, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let e = Hyperedge::new(
            vec![0, 1],
            EdgeActivity::SpinTable(crate::SpinTable::from_values(values)),
        )
        .unwrap();
        assert!(!suzuki_fisher_check(&e));
    }

    #[test]
    fn instance_verdicts() {
        let g = Hypergraph::ising(4, &[(&[0, 1, 2], 0.4), (&[0, 1, 2, 3], 0.4)]).unwrap();
        assert!(check_instance(&g).all_pass);
        let g = Hypergraph::ising(3, &[(&[0, 1, 2], -0.4)]).unwrap();
        let check = check_instance(&g);
        assert!(!check.all_pass);
        assert!(!check.edges[0].pass);
    }

    #[test]
    fn witnesses() {
        let w = tight_example(2, 1.5, 1e-6).unwrap();
        assert_eq!(w.k_used, 2);
        assert!((w.witness_root.re + 1.5 + 1.25f64.sqrt()).abs() < 1e-9);

        let w = tight_example(3, -0.4, 1e-6).unwrap();
        let sc = w.sign_change.unwrap();
        assert!((sc.p_at_0 - 1.0).abs() < 1e-12);
        assert!((sc.p_at_1 + 0.4).abs() < 1e-12);
        assert!(sc.root > 0.0 && sc.root < 1.0);

        let w = tight_example(4, 0.6, 1e-6).unwrap();
        assert!(w.deviation > 1e-5);

        assert!(matches!(
            tight_example(3, 0.5, 1e-6),
            Err(Error::InsideRange { .. })
        ));
    }

    #[test]
    fn cosine_products() {
        assert_eq!(cos_product_max(5, 0).unwrap(), 1.0);
        assert!((cos_product_max(4, 1).unwrap() - 0.25).abs() < 1e-15);
        assert!((cos_product_max(3, 1).unwrap() - 0.125).abs() < 1e-15);
        assert!(cos_product_max(3, 2).is_err());
        for (k, m) in [(4, 1), (3, 1), (5, -2), (6, 3), (2, 0)] {
            cos_product_max_verified(k, m, 7).unwrap();
        }
    }
}
