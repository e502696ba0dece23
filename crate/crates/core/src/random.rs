//! Seeded random instances for tests, sweeps and benchmarks.

use crate::error::Result;
use crate::hypergraph::{EdgeActivity, Hypergraph, SpinTable};
use crate::leeyang::ising_ly_range;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActivityKind {
    /// Ising `beta` uniform in the closed Lee-Yang range of the edge size.
    IsingInRange,
    /// Ising `beta` uniform in `[lo, hi]` regardless of edge size.
    IsingUniform { lo: f64, hi: f64 },
    /// Symmetric table satisfying the Suzuki-Fisher condition.
    SuzukiFisherTable,
    /// Symmetric table, no further constraint.
    SymmetricTable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeSpec {
    pub min_n: usize,
    pub max_n: usize,
    pub max_degree: usize,
    pub max_edge_size: usize,
}

/// Random `phi` with `phi(-...-) = phi(+...+) = 1` and
/// `phi(sigma) = conj(phi(-sigma))`. With `suzuki_fisher` the mixed
/// entries have total modulus at most 2.
pub fn random_symmetric_table<R: Rng>(rng: &mut R, k: usize, suzuki_fisher: bool) -> SpinTable {
    let full = (1usize << k) - 1;
    let mut values = vec![Complex64::default(); full + 1];
    values[0] = Complex64::new(1.0, 0.0);
    values[full] = Complex64::new(1.0, 0.0);
    for mask in 1..full {
        if mask < full ^ mask {
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            values[mask] = v;
            values[full ^ mask] = v.conj();
        }
    }
    if suzuki_fisher {
        let mixed: f64 = values[1..full].iter().map(|v| v.norm()).sum();
        let scale = 2.0 * rng.gen_range(0.0..=1.0) / mixed;
        for v in &mut values[1..full] {
            *v *= scale;
        }
    }
    SpinTable::from_values(values)
}

pub fn random_activity<R: Rng>(rng: &mut R, k: usize, kind: ActivityKind) -> EdgeActivity {
    match kind {
        ActivityKind::IsingInRange => {
            let range = ising_ly_range(k).expect("edges have at least two vertices");
            EdgeActivity::IsingBeta(rng.gen_range(range.lo..=range.hi))
        }
        ActivityKind::IsingUniform { lo, hi } => EdgeActivity::IsingBeta(rng.gen_range(lo..=hi)),
        ActivityKind::SuzukiFisherTable => {
            EdgeActivity::SpinTable(random_symmetric_table(rng, k, true))
        }
        ActivityKind::SymmetricTable => {
            EdgeActivity::SpinTable(random_symmetric_table(rng, k, false))
        }
    }
}

/// Edge vertex sets of a connected hypergraph on `n` vertices with degrees
/// at most `max_degree` and edge sizes in `2..=max_edge_size`.
fn connected_shape<R: Rng>(rng: &mut R, n: usize, spec: &ShapeSpec) -> Option<Vec<Vec<u32>>> {
    let mut degree = vec![0usize; n];
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    let mut covered = 1;
    while covered < n {
        let anchors: Vec<u32> = order[..covered]
            .iter()
            .copied()
            .filter(|&v| degree[v as usize] < spec.max_degree)
            .collect();
        let &anchor = anchors.choose(rng)?;
        let k = rng.gen_range(2..=spec.max_edge_size);
        let fresh = (k - 1).min(n - covered);
        let mut edge = vec![anchor];
        edge.extend_from_slice(&order[covered..covered + fresh]);
        covered += fresh;
        let mut spare: Vec<u32> = anchors.into_iter().filter(|&v| v != anchor).collect();
        spare.shuffle(rng);
        edge.extend(spare.into_iter().take(k - 1 - fresh));
        for &v in &edge {
            degree[v as usize] += 1;
        }
        edges.push(edge);
    }
    let extra = rng.gen_range(0..=n / 2);
    for _ in 0..extra {
        let mut open: Vec<u32> = (0..n as u32)
            .filter(|&v| degree[v as usize] < spec.max_degree)
            .collect();
        if open.len() < 2 {
            break;
        }
        open.shuffle(rng);
        let k = rng.gen_range(2..=spec.max_edge_size.min(open.len()));
        let edge: Vec<u32> = open[..k].to_vec();
        for &v in &edge {
            degree[v as usize] += 1;
        }
        edges.push(edge);
    }
    Some(edges)
}

/// Random connected hypergraph with the given shape bounds.
pub fn random_connected_hypergraph<R: Rng>(
    rng: &mut R,
    spec: &ShapeSpec,
    kind: ActivityKind,
) -> Result<Hypergraph> {
    assert!(spec.max_edge_size >= 2 && spec.max_degree >= 2 && spec.min_n >= 1);
    let n = rng.gen_range(spec.min_n..=spec.max_n);
    let shape = loop {
        if let Some(shape) = connected_shape(rng, n, spec) {
            break shape;
        }
    };
    let parts = shape
        .into_iter()
        .map(|vertices| {
            let k = vertices.len();
            (vertices, random_activity(rng, k, kind))
        })
        .collect();
    Hypergraph::from_parts(n, parts)
}

/// Simple `d`-regular graph on `n` vertices (pairing model with restarts),
/// every edge with Ising activity `beta`.
pub fn random_regular_graph<R: Rng>(rng: &mut R, n: usize, d: usize, beta: f64) -> Result<Hypergraph> {
    assert!((n * d).is_multiple_of(2) && d < n, "no simple {d}-regular graph on {n} vertices");
    'retry: loop {
        let mut points: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(rng);
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a == b || !seen.insert((a, b)) {
                continue 'retry;
            }
            edges.push((vec![a, b], EdgeActivity::IsingBeta(beta)));
        }
        return Hypergraph::from_parts(n, edges);
    }
}
