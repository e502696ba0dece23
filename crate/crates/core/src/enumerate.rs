//! Connected induced sub-insects of bounded size, grown one vertex at a time
//! from single vertices.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, LabelSet};
use rayon::prelude::*;
use std::collections::HashSet;

/// All label sets `S` with `|S| <= t_max` whose induced insect is connected.
/// Each size class is sorted lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectedFamily {
    t_max: usize,
    by_size: Vec<Vec<LabelSet>>,
}

impl ConnectedFamily {
    pub fn t_max(&self) -> usize {
        self.t_max
    }

    /// Sets of exactly `size` labels (empty for sizes outside `1..=t_max`).
    pub fn of_size(&self, size: usize) -> &[LabelSet] {
        if size == 0 || size > self.by_size.len() {
            return &[];
        }
        &self.by_size[size - 1]
    }

    /// Sets ordered by size, then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &LabelSet> {
        self.by_size.iter().flatten()
    }

    /// Sets of size at most `t`.
    pub fn up_to(&self, t: usize) -> impl Iterator<Item = &LabelSet> {
        self.by_size.iter().take(t).flatten()
    }

    pub fn len(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `counts()[s - 1]` is the number of connected sets of size `s`.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts: Vec<usize> = self.by_size.iter().map(Vec::len).collect();
        counts.resize(self.t_max, 0);
        counts
    }

    pub fn contains(&self, set: &LabelSet) -> bool {
        self.of_size(set.len()).binary_search(set).is_ok()
    }
}

/// Vertices outside `set` that share an edge with it.
fn frontier(g: &Hypergraph, set: &LabelSet) -> Vec<u32> {
    let mut out: Vec<u32> = set
        .iter()
        .flat_map(|v| g.incident(v).iter())
        .flat_map(|&e| g.edges()[e].vertices().iter().copied())
        .filter(|&u| !set.contains(u))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Enumerates every connected induced sub-insect with at most `t` labels.
///
/// Fails once more than `memory_cap` sets would be held.
pub fn enumerate_connected(g: &Hypergraph, t: usize, memory_cap: usize) -> Result<ConnectedFamily> {
    if t == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut by_size: Vec<Vec<LabelSet>> = Vec::new();
    let singles: Vec<LabelSet> = (0..g.n() as u32).map(LabelSet::singleton).collect();
    if singles.len() > memory_cap {
        return Err(Error::FrontierCap {
            cap: memory_cap,
            size: 1,
        });
    }
    let mut total = singles.len();
    by_size.push(singles);

    for size in 2..=t {
        let prev = by_size.last().expect("size 1 is always present");
        if prev.is_empty() {
            break;
        }
        let grown: HashSet<LabelSet> = prev
            .par_iter()
            .fold(HashSet::new, |mut acc, set| {
                for v in frontier(g, set) {
                    acc.insert(set.with(v));
                }
                acc
            })
            .reduce(HashSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.extend(b);
                a
            });
        total += grown.len();
        if total > memory_cap {
            return Err(Error::FrontierCap {
                cap: memory_cap,
                size,
            });
        }
        let mut level: Vec<LabelSet> = grown.into_iter().collect();
        level.par_sort_unstable();
        log::debug!("connected sets of size {size}: {}", level.len());
        by_size.push(level);
    }
    while by_size.last().is_some_and(Vec::is_empty) {
        by_size.pop();
    }
    Ok(ConnectedFamily { t_max: t, by_size })
}

/// `n (e Δ k)^(t-1) / 2`: upper bound on the number of connected induced
/// sub-insects with exactly `t` labels (meaningful for `t >= 2`).
pub fn count_bound(n: usize, max_degree: usize, max_edge_size: usize, t: usize) -> f64 {
    let base = std::f64::consts::E * max_degree as f64 * max_edge_size as f64;
    n as f64 * base.powi(t as i32 - 1) / 2.0
}
