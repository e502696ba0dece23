//! Truncated Taylor expansion of `log Z` around `lambda = 0`.

use crate::coefficients::{
    compute_tables, extend_power_sums, newton_invert, power_sums, DpStats, ElementarySymmetric,
    PowerSums,
};
use crate::enumerate::enumerate_connected;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::leeyang::check_instance;
use crate::numeric::KahanSum;
use crate::Config;
use num_complex::Complex64;
use serde::Serialize;
use std::time::Instant;

/// Allowed `||lambda| - 1|` before a point counts as on the unit circle.
pub const CIRCLE_EXCLUSION: f64 = 1e-12;

/// Smallest `m >= (ln(4n/eps) + ln(1/(1-|lambda|))) / ln(1/|lambda|)`, at least 1.
pub fn choose_m(n: usize, epsilon: f64, abs_lambda: f64) -> Result<usize> {
    if abs_lambda.is_nan() || abs_lambda >= 1.0 {
        return Err(Error::LambdaNotInsideDisk(abs_lambda));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon));
    }
    if abs_lambda == 0.0 || n == 0 {
        return Ok(1);
    }
    let x = ((4.0 * n as f64 / epsilon).ln() - (1.0 - abs_lambda).ln()) / -abs_lambda.ln();
    Ok((x.ceil() as usize).max(1))
}

/// `n |lambda|^(m+1) / ((m+1)(1-|lambda|))`.
pub fn truncation_bound(n: usize, abs_lambda: f64, m: usize) -> f64 {
    n as f64 * abs_lambda.powi(m as i32 + 1) / ((m as f64 + 1.0) * (1.0 - abs_lambda))
}

/// `f_m(lambda) = -sum_{j<=m} p_j lambda^j / j`.
pub fn truncated_log_z(p: &PowerSums, lambda: Complex64, m: usize) -> Complex64 {
    let mut acc = KahanSum::new();
    let mut power = Complex64::new(1.0, 0.0);
    for j in 1..=m {
        power *= lambda;
        acc.add(-p.get(j) * power / j as f64);
    }
    acc.value()
}

/// Taylor coefficients `f_j = [lambda^j] log Z` from `Z' = Z f'`:
/// `f_j = c_j - sum_{i<j} (i/j) f_i c_{j-i}` with `c_0 = 1`.
pub fn log_series(c: &[Complex64], m: usize) -> Vec<Complex64> {
    let coeff = |i: usize| c.get(i).copied().unwrap_or_default();
    let mut f: Vec<Complex64> = vec![Complex64::default(); m + 1];
    for j in 1..=m {
        let mut acc = KahanSum::new();
        acc.add(coeff(j));
        for i in 1..j {
            acc.add(-(i as f64 / j as f64) * f[i] * coeff(j - i));
        }
        f[j] = acc.value();
    }
    f
}

/// `sum_{j<=m} f_j lambda^j` via the triangular system of [`log_series`].
pub fn triangular_check(c: &[Complex64], lambda: Complex64, m: usize) -> Complex64 {
    let f = log_series(c, m);
    let mut acc = KahanSum::new();
    let mut power = Complex64::new(1.0, 0.0);
    for fj in f.iter().skip(1) {
        power *= lambda;
        acc.add(fj * power);
    }
    acc.value()
}

#[derive(Debug, Clone, Serialize)]
pub struct TaylorApproximation {
    pub m: usize,
    pub lambda: Complex64,
    pub lambda_effective: Complex64,
    pub inverted: bool,
    /// Largest connected-set size used by the coefficient tables.
    pub depth: usize,
    pub f_m: Complex64,
    pub z_hat: Complex64,
    pub bound: f64,
    pub epsilon: f64,
    /// The error bound applies (every edge passes the Lee-Yang check).
    pub guarantee: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct StageTimings {
    pub enumerate_ms: f64,
    pub tables_ms: f64,
    pub series_ms: f64,
}

/// Power sums of one host up to a given depth.
#[derive(Debug, Clone)]
pub struct Series {
    pub depth: usize,
    pub family_counts: Vec<usize>,
    pub power_sums: PowerSums,
    pub elementary: ElementarySymmetric,
    pub stats: DpStats,
}

impl Series {
    pub fn compute(g: &Hypergraph, depth: usize, memory_cap: usize) -> Result<(Self, StageTimings)> {
        let start = Instant::now();
        let family = enumerate_connected(g, depth, memory_cap)?;
        let enumerated = Instant::now();
        let table = compute_tables(g, &family, depth)?;
        let tabled = Instant::now();
        let power_sums = power_sums(&table, &family, depth);
        let elementary = newton_invert(&power_sums);
        let done = Instant::now();
        let ms = |a: Instant, b: Instant| (b - a).as_secs_f64() * 1e3;
        Ok((
            Self {
                depth,
                family_counts: family.counts(),
                power_sums,
                elementary,
                stats: table.stats(),
            },
            StageTimings {
                enumerate_ms: ms(start, enumerated),
                tables_ms: ms(enumerated, tabled),
                series_ms: ms(tabled, done),
            },
        ))
    }

    /// `p_1..p_m`, extended past `n` through Newton's identities when the
    /// series covers every vertex.
    pub fn power_sums_to(&self, n: usize, m: usize) -> PowerSums {
        if m <= self.depth {
            PowerSums(self.power_sums.0[..m].to_vec())
        } else {
            assert_eq!(self.depth, n, "series must be complete to extend");
            extend_power_sums(&self.elementary, &self.power_sums, m)
        }
    }
}

/// Evaluates the truncated series for one host, reusing power sums across
/// calls.
#[derive(Debug, Clone)]
pub struct Approximator {
    host: Hypergraph,
    conjugate: Option<Hypergraph>,
    cfg: Config,
    guarantee: bool,
    direct: Option<Series>,
    inverse: Option<Series>,
    timings: StageTimings,
}

impl Approximator {
    pub fn new(g: &Hypergraph, cfg: Config) -> Self {
        Self {
            host: g.clone(),
            conjugate: None,
            cfg,
            guarantee: check_instance(g).all_pass,
            direct: None,
            inverse: None,
            timings: StageTimings::default(),
        }
    }

    pub fn timings(&self) -> StageTimings {
        self.timings
    }

    /// Most recently used series (direct or inverted).
    pub fn series(&self, inverted: bool) -> Option<&Series> {
        if inverted {
            self.inverse.as_ref()
        } else {
            self.direct.as_ref()
        }
    }

    fn ensure_series(&mut self, inverted: bool, depth: usize) -> Result<&Series> {
        let cached = if inverted { &self.inverse } else { &self.direct };
        if cached.as_ref().is_none_or(|s| s.depth < depth) {
            let g = if inverted {
                self.conjugate.get_or_insert_with(|| self.host.conjugated())
            } else {
                &self.host
            };
            let (series, timings) = Series::compute(g, depth, self.cfg.memory_cap)?;
            self.timings = timings;
            if inverted {
                self.inverse = Some(series);
            } else {
                self.direct = Some(series);
            }
        } else {
            self.timings = StageTimings::default();
        }
        Ok(if inverted {
            self.inverse.as_ref().unwrap()
        } else {
            self.direct.as_ref().unwrap()
        })
    }

    pub fn approximate(&mut self, lambda: Complex64, epsilon: f64) -> Result<TaylorApproximation> {
        let abs = lambda.norm();
        if (abs - 1.0).abs() <= CIRCLE_EXCLUSION {
            return Err(Error::OnUnitCircle(abs));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::EpsilonOutOfRange(epsilon));
        }
        let inverted = abs > 1.0;
        if inverted {
            if let Some(edge) = self.host.first_asymmetric_edge() {
                return Err(Error::AsymmetricInversion(edge));
            }
        }
        let lambda_effective = if inverted { lambda.inv() } else { lambda };
        let n = self.host.n();
        let m = choose_m(n, epsilon, lambda_effective.norm())?;
        if m > self.cfg.series_cap {
            return Err(Error::SeriesCap {
                m,
                cap: self.cfg.series_cap,
            });
        }
        let depth = m.min(n);
        if depth > self.cfg.m_cap {
            return Err(Error::OrderCap {
                m,
                depth,
                cap: self.cfg.m_cap,
            });
        }
        let (f_m, depth) = if n == 0 {
            (Complex64::default(), 0)
        } else {
            let series = self.ensure_series(inverted, depth)?;
            let p = series.power_sums_to(n, m);
            (truncated_log_z(&p, lambda_effective, m), depth)
        };
        let mut z_hat = f_m.exp();
        if inverted {
            z_hat *= lambda.powu(n as u32);
        }
        log::debug!("m = {m}, depth = {depth}, f_m = {f_m}, z_hat = {z_hat}");
        Ok(TaylorApproximation {
            m,
            lambda,
            lambda_effective,
            inverted,
            depth,
            f_m,
            z_hat,
            bound: truncation_bound(n, lambda_effective.norm(), m),
            epsilon,
            guarantee: self.guarantee,
        })
    }
}

/// One-shot [`Approximator::approximate`].
pub fn approximate_z(
    g: &Hypergraph,
    lambda: Complex64,
    epsilon: f64,
    cfg: &Config,
) -> Result<TaylorApproximation> {
    Approximator::new(g, *cfg).approximate(lambda, epsilon)
}
