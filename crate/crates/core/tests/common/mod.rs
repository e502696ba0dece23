#![allow(dead_code)]

use hyperising::coefficients::{compute_tables, newton_invert, power_sums, ElementarySymmetric, PowerSums};
use hyperising::enumerate::enumerate_connected;
use hyperising::random::{random_connected_hypergraph, ActivityKind, ShapeSpec};
use hyperising::Hypergraph;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SMALL: ShapeSpec = ShapeSpec {
    min_n: 2,
    max_n: 12,
    max_degree: 4,
    max_edge_size: 4,
};

pub fn instances(seed: u64, count: usize, spec: &ShapeSpec, kind: ActivityKind) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_connected_hypergraph(&mut rng, spec, kind).unwrap())
        .collect()
}

pub fn series(g: &Hypergraph, depth: usize) -> (PowerSums, ElementarySymmetric) {
    let fam = enumerate_connected(g, depth, 1 << 26).unwrap();
    let table = compute_tables(g, &fam, depth).unwrap();
    let p = power_sums(&table, &fam, depth);
    let e = newton_invert(&p);
    (p, e)
}

pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let scale = b.norm();
    if scale == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / scale
    }
}

/// Worst relative error of `(-1)^i e_i` against `c_i`, measured against
/// `max(|c_i|, 1e-300)`.
pub fn coefficient_error(e: &ElementarySymmetric, c: &[Complex64]) -> f64 {
    let coeffs = e.coefficients();
    coeffs
        .iter()
        .zip(c)
        .map(|(a, b)| rel_err(*a, *b))
        .fold(0.0, f64::max)
}

pub fn shape(min_n: usize, max_n: usize) -> ShapeSpec {
    ShapeSpec {
        min_n,
        max_n,
        max_degree: 4,
        max_edge_size: 4,
    }
}

pub fn one_instance(seed: u64, spec: &ShapeSpec, kind: ActivityKind) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected_hypergraph(&mut rng, spec, kind).unwrap()
}

/// Label sets of every subset mask of `0..n`.
pub fn subset(mask: u32) -> Vec<u32> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}
