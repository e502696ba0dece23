//! All roots of a univariate complex polynomial by Aberth–Ehrlich iteration.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::f64::consts::PI;

/// Coefficients with `|c_j| < STRIP_TOL * max |c|` at the top are dropped.
pub const STRIP_TOL: f64 = 1e-12;
const MAX_ITER: usize = 1000;

/// Index of the last coefficient that survives stripping, or `None` for the
/// zero polynomial.
pub fn effective_degree(coeffs: &[Complex64]) -> Option<usize> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    coeffs.iter().rposition(|c| c.norm() >= STRIP_TOL * scale)
}

/// `p(z)`, `p'(z)` and the rounding bound `sum |c_j| |z|^j`.
#[inline]
fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let zero = Complex64::new(0.0, 0.0);
    let r = z.norm();
    let (mut p, mut dp, mut bound) = (zero, zero, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * r + c.norm();
    }
    (p, dp, bound)
}

fn by_modulus_then_argument(a: &Complex64, b: &Complex64) -> Ordering {
    a.norm()
        .partial_cmp(&b.norm())
        .unwrap_or(Ordering::Equal)
        .then(a.arg().partial_cmp(&b.arg()).unwrap_or(Ordering::Equal))
}

/// All `deg` roots of `sum_j c_j z^j`, ordered by `(|r|, arg r)`.
///
/// Every returned root satisfies `|p(r)| <= tol * max_j |c_j|`.
pub fn polynomial_roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let deg = effective_degree(coeffs).ok_or(Error::ZeroPolynomial)?;
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let poly = &coeffs[..=deg];

    // exact zeros at the origin
    let low = poly.iter().position(|c| *c != Complex64::new(0.0, 0.0)).unwrap_or(0);
    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    let reduced = &poly[low..];
    let d = reduced.len() - 1;

    match d {
        0 => {}
        1 => roots.push(-reduced[0] / reduced[1]),
        _ => roots.extend(aberth(reduced)?),
    }

    for r in &roots {
        let (p, _, _) = eval_with_derivative(poly, *r);
        let residual = p.norm();
        if residual > tol * scale {
            return Err(Error::Residual {
                residual: residual / scale,
                tolerance: tol,
            });
        }
    }
    roots.sort_by(by_modulus_then_argument);
    Ok(roots)
}

fn aberth(poly: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = poly.len() - 1;
    let lead = poly[d];
    // equal-modulus start at the geometric mean of the root moduli
    let radius = (poly[0] / lead).norm().powf(1.0 / d as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / d as f64 + 0.4))
        .collect();
    let mut done = vec![false; d];

    for _ in 0..MAX_ITER {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp, bound) = eval_with_derivative(poly, z[i]);
            if p.norm() <= 8.0 * f64::EPSILON * bound {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // coincident iterates; nudge apart deterministically
                let nudge = Complex64::new(1e-8 * (1.0 + z[i].norm()), 1e-8 * (i as f64 + 1.0));
                z[i] += nudge;
                continue;
            }
            z[i] -= step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if done.iter().all(|&x| x) {
            return Ok(polish(poly, z));
        }
    }
    Err(Error::NoConvergence(MAX_ITER))
}

/// A few Newton steps per root, keeping a step only if it lowers the residual.
fn polish(poly: &[Complex64], mut z: Vec<Complex64>) -> Vec<Complex64> {
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = eval_with_derivative(poly, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let candidate = *r - p / dp;
            let (pc, _, _) = eval_with_derivative(poly, candidate);
            if pc.norm() < p.norm() {
                *r = candidate;
            } else {
                break;
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn quadratic_on_circle() {
        // 1 + z + z^2 (beta = 0.5 edge)
        let roots = polynomial_roots(&[c(1.0), c(1.0), c(1.0)], 1e-10).unwrap();
        assert_eq!(roots.len(), 2);
        let expected = [
            Complex64::new(-0.5, -(3f64.sqrt()) / 2.0),
            Complex64::new(-0.5, 3f64.sqrt() / 2.0),
        ];
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).norm() < 1e-12, "{r} vs {e}");
        }
    }

    #[test]
    fn double_root_factorization() {
        // z^3 - z^2 - z + 1 = (z - 1)^2 (z + 1)
        let roots = polynomial_roots(&[c(1.0), c(-1.0), c(-1.0), c(1.0)], 1e-10).unwrap();
        let mut near_one = 0;
        let mut near_minus_one = 0;
        for r in &roots {
            if (r - c(1.0)).norm() < 1e-6 {
                near_one += 1;
            } else if (r + c(1.0)).norm() < 1e-6 {
                near_minus_one += 1;
            }
        }
        assert_eq!((near_one, near_minus_one), (2, 1));
    }

    #[test]
    fn triple_root() {
        // a triple root is only determined to about eps^(1/3)
        let roots = polynomial_roots(&[c(1.0), c(3.0), c(3.0), c(1.0)], 1e-10).unwrap();
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r + c(1.0)).norm() < 1e-4, "{r}");
        }
    }

    #[test]
    fn strips_negligible_leading_coefficients() {
        let roots = polynomial_roots(&[c(2.0), c(1.0), c(1e-14)], 1e-10).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] + c(2.0)).norm() < 1e-12);
        assert_eq!(effective_degree(&[c(1.0), c(0.0)]), Some(0));
        assert!(polynomial_roots(&[c(0.0)], 1e-10).is_err());
    }

    #[test]
    fn zero_roots_and_ordering() {
        // z^2 (z - 2) (z + 0.5)
        let p = [c(0.0), c(0.0), c(-1.0), c(-1.5), c(1.0)];
        let roots = polynomial_roots(&p, 1e-10).unwrap();
        assert_eq!(roots.len(), 4);
        assert_eq!(roots[0], c(0.0));
        assert_eq!(roots[1], c(0.0));
        assert!((roots[2] + c(0.5)).norm() < 1e-12);
        assert!((roots[3] - c(2.0)).norm() < 1e-12);
    }

    #[test]
    fn complex_coefficients() {
        // (z - i)(z - 2 + i) = z^2 - 2z + (1 + 2i)
        let p = [Complex64::new(1.0, 2.0), c(-2.0), c(1.0)];
        let roots = polynomial_roots(&p, 1e-10).unwrap();
        assert!((roots[0] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!((roots[1] - Complex64::new(2.0, -1.0)).norm() < 1e-12);
    }
}
