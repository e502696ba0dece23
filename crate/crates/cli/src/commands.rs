use crate::report::{digest, RunReport, Timings};
use crate::{Cli, Command};
use hyperising::coefficients::ElementarySymmetric;
use hyperising::enumerate::{count_bound, enumerate_connected};
use hyperising::hypergraph::json::parse_hypergraph;
use hyperising::leeyang::{check_instance, tight_example, verify_zeros_on_circle};
use hyperising::oracle::{exact_coefficients, exact_partition};
use hyperising::random::{random_connected_hypergraph, ActivityKind, ShapeSpec};
use hyperising::taylor::{Approximator, Series};
use hyperising::{Config, Error, Hypergraph};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Refusal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Refusal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Refusal(m) => write!(f, "refused: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OnUnitCircle(_)
            | Error::OrderCap { .. }
            | Error::SeriesCap { .. }
            | Error::FrontierCap { .. }
            | Error::OracleCap { .. }
            | Error::AsymmetricInversion(_) => CliError::Refusal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn load(path: &Path) -> Result<(Vec<u8>, Hypergraph)> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::Input(format!("{} is not UTF-8: {e}", path.display())))?;
    let g = parse_hypergraph(text)?;
    Ok((bytes, g))
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

struct Payload {
    input: Option<Vec<u8>>,
    parameters: Value,
    result: Value,
    guarantee: Option<bool>,
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let cfg = cli.global.config();
    let mut timings = Timings::default();
    let (name, payload) = match &cli.command {
        Command::Approx {
            input,
            lambda,
            epsilon,
        } => ("approx", approx(input, *lambda, *epsilon, &cfg, &mut timings)?),
        Command::Exact { input, lambda } => ("exact", exact(input, *lambda, &cfg, &mut timings)?),
        Command::Zeros { input } => ("zeros", zeros(input, &cfg, &mut timings)?),
        Command::CheckRange { input } => ("check-range", check_range(input, &mut timings)?),
        Command::Enumerate { input, t, sets } => {
            ("enumerate", enumerate(input, *t, *sets, &cfg, &mut timings)?)
        }
        Command::Coeffs { input, m } => ("coeffs", coeffs(input, *m, &cfg, &mut timings)?),
        Command::TightExample { k, beta } => {
            ("tight-example", tight(*k, *beta, &cfg, &mut timings)?)
        }
        Command::Sweep {
            count,
            max_n,
            max_degree,
            max_edge_size,
            beta_lo,
            beta_hi,
        } => {
            let spec = ShapeSpec {
                min_n: 1,
                max_n: *max_n,
                max_degree: *max_degree,
                max_edge_size: *max_edge_size,
            };
            let range = beta_lo.zip(*beta_hi);
            ("sweep", sweep(*count, spec, range, cli.global.seed, &cfg, &mut timings)?)
        }
    };
    let input_digest = match &payload.input {
        Some(bytes) => digest(bytes),
        None => digest(payload.parameters.to_string().as_bytes()),
    };
    Ok(RunReport {
        command: name.to_string(),
        input_digest,
        parameters: payload.parameters,
        result: payload.result,
        guarantee: payload.guarantee,
        timings_ms: timings.into_map(),
    })
}

fn approx(
    input: &Path,
    lambda: Complex64,
    epsilon: f64,
    cfg: &Config,
    timings: &mut Timings,
) -> Result<Payload> {
    let (bytes, g) = timings.time("parse", || load(input))?;
    let mut approximator = Approximator::new(&g, *cfg);
    let a = approximator.approximate(lambda, epsilon)?;
    let stages = approximator.timings();
    timings.record("enumerate", stages.enumerate_ms);
    timings.record("tables", stages.tables_ms);
    timings.record("series", stages.series_ms);
    if !a.guarantee {
        log::warn!("activities outside the Lee-Yang ranges; result is best-effort");
    }
    Ok(Payload {
        input: Some(bytes),
        parameters: json!({
            "lambda": complex_json(lambda),
            "epsilon": epsilon,
            "m_cap": cfg.m_cap,
            "series_cap": cfg.series_cap,
            "memory_cap": cfg.memory_cap,
        }),
        guarantee: Some(a.guarantee),
        result: to_value(&a),
    })
}

fn exact(input: &Path, lambda: Option<Complex64>, cfg: &Config, timings: &mut Timings) -> Result<Payload> {
    let (bytes, g) = timings.time("parse", || load(input))?;
    let c = timings.time("coefficients", || exact_coefficients(&g, cfg.oracle_cap))?;
    let z = match lambda {
        Some(l) => Some(timings.time("evaluate", || exact_partition(&g, l, cfg.oracle_cap))?),
        None => None,
    };
    let mut result = json!({ "n": g.n(), "coefficients": to_value(&c) });
    if let Some(z) = z {
        result["z"] = complex_json(z);
    }
    Ok(Payload {
        input: Some(bytes),
        parameters: json!({
            "lambda": lambda.map(complex_json),
            "oracle_cap": cfg.oracle_cap,
        }),
        result,
        guarantee: None,
    })
}

fn zeros(input: &Path, cfg: &Config, timings: &mut Timings) -> Result<Payload> {
    let (bytes, g) = timings.time("parse", || load(input))?;
    let report = timings.time("zeros", || verify_zeros_on_circle(&g, cfg))?;
    Ok(Payload {
        input: Some(bytes),
        parameters: json!({
            "tol_circle": cfg.tol_circle,
            "tol_residual": cfg.tol_residual,
            "oracle_cap": cfg.oracle_cap,
        }),
        result: to_value(&report),
        guarantee: None,
    })
}

fn check_range(input: &Path, timings: &mut Timings) -> Result<Payload> {
    let (bytes, g) = timings.time("parse", || load(input))?;
    let check = timings.time("check", || check_instance(&g));
    Ok(Payload {
        input: Some(bytes),
        parameters: json!({}),
        result: to_value(&check),
        guarantee: None,
    })
}

fn enumerate(input: &Path, t: usize, sets: bool, cfg: &Config, timings: &mut Timings) -> Result<Payload> {
    let (bytes, g) = timings.time("parse", || load(input))?;
    let fam = timings.time("enumerate", || enumerate_connected(&g, t, cfg.memory_cap))?;
    let counts: BTreeMap<usize, usize> = fam
        .counts()
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i + 1, c))
        .collect();
    let bounds: BTreeMap<usize, f64> = (2..=t)
        .map(|s| (s, count_bound(g.n(), g.max_degree(), g.max_edge_size(), s)))
        .collect();
    let mut result = json!({
        "total": fam.len(),
        "counts": counts,
        "count_bounds": bounds,
    });
    if sets {
        let listed: Vec<&[u32]> = fam.iter().map(|s| s.as_slice()).collect();
        result["sets"] = to_value(&listed);
    }
    Ok(Payload {
        input: Some(bytes),
        parameters: json!({ "t": t, "sets": sets, "memory_cap": cfg.memory_cap }),
        result,
        guarantee: None,
    })
}

fn coeffs(input: &Path, m: usize, cfg: &Config, timings: &mut Timings) -> Result<Payload> {
    let (bytes, g) = timings.time("parse", || load(input))?;
    if m == 0 {
        return Err(Error::ZeroOrder.into());
    }
    let depth = m.min(g.n());
    if depth > cfg.m_cap {
        return Err(Error::OrderCap {
            m,
            depth,
            cap: cfg.m_cap,
        }
        .into());
    }
    let (p, e) = if depth == 0 {
        (Vec::new(), Vec::new())
    } else {
        let (series, stages) = Series::compute(&g, depth, cfg.memory_cap)?;
        timings.record("enumerate", stages.enumerate_ms);
        timings.record("tables", stages.tables_ms);
        timings.record("series", stages.series_ms);
        let p = series.power_sums_to(g.n(), m);
        let mut e = series.elementary.0.clone();
        e.resize(m, Complex64::default());
        (p.0, e)
    };
    let c = ElementarySymmetric(e.clone()).coefficients();
    Ok(Payload {
        input: Some(bytes),
        parameters: json!({ "m": m, "m_cap": cfg.m_cap, "memory_cap": cfg.memory_cap }),
        result: json!({
            "depth": depth,
            "p": to_value(&p),
            "e": to_value(&e),
            "c": to_value(&c),
        }),
        guarantee: None,
    })
}

fn tight(k: usize, beta: f64, cfg: &Config, timings: &mut Timings) -> Result<Payload> {
    let w = timings.time("witness", || tight_example(k, beta, cfg.tol_circle))?;
    Ok(Payload {
        input: None,
        parameters: json!({ "k": k, "beta": beta, "tol_circle": cfg.tol_circle }),
        result: to_value(&w),
        guarantee: None,
    })
}

fn sweep(
    count: usize,
    spec: ShapeSpec,
    beta_range: Option<(f64, f64)>,
    seed: u64,
    cfg: &Config,
    timings: &mut Timings,
) -> Result<Payload> {
    if spec.max_n == 0 || spec.max_degree < 2 || spec.max_edge_size < 2 {
        return Err(CliError::Input(
            "sweep needs max-n >= 1, max-degree >= 2 and max-edge-size >= 2".into(),
        ));
    }
    if let Some((lo, hi)) = beta_range {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(CliError::Input(format!("empty beta range [{lo}, {hi}]")));
        }
    }
    let kind = match beta_range {
        Some((lo, hi)) => ActivityKind::IsingUniform { lo, hi },
        None => ActivityKind::IsingInRange,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(count);
    let mut worst_in = 0.0f64;
    let mut worst_out = 0.0f64;
    for i in 0..count {
        let g = random_connected_hypergraph(&mut rng, &spec, kind)?;
        let report = timings.time("zeros", || verify_zeros_on_circle(&g, cfg))?;
        let dev = report.zeros.max_circle_deviation;
        if report.in_range {
            worst_in = worst_in.max(dev);
        } else {
            worst_out = worst_out.max(dev);
        }
        rows.push(json!({
            "index": i,
            "n": g.n(),
            "edges": g.edges().len(),
            "in_range": report.in_range,
            "max_circle_deviation": dev,
            "on_circle": report.on_circle,
            "instance": hyperising::hypergraph::json::to_json(&g),
        }));
    }
    Ok(Payload {
        input: None,
        parameters: json!({
            "count": count,
            "max_n": spec.max_n,
            "max_degree": spec.max_degree,
            "max_edge_size": spec.max_edge_size,
            "beta_range": beta_range.map(|(lo, hi)| [lo, hi]),
            "seed": seed,
            "tol_circle": cfg.tol_circle,
        }),
        result: json!({
            "instances": rows,
            "worst_deviation_in_range": worst_in,
            "worst_deviation_out_of_range": worst_out,
        }),
        guarantee: None,
    })
}
