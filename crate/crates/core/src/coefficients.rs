//! Power-sum coefficients over connected insects.
//!
//! With `Z(lambda) = prod_i (1 - lambda / r_i) = sum_i (-1)^i e_i lambda^i`
//! and `p_t = sum_i r_i^(-t)`, every `p_t` is a weighted count of connected
//! induced insects:
//!
//! ```text
//! p_t(G) = sum_{S connected, |S| <= t} a^(t)_{ind(S)}
//! ```
//!
//! The weights follow from Newton's identities
//! `p_t = sum_{i<t} (-1)^(i-1) p_{t-i} e_i + (-1)^(t-1) t e_t`, where the
//! product `p_{t-i} e_i` expands over pairs `(S1, S2)` covering the labels
//! of `H`, with `|S1| = i` weighted by `mu` and `S2` connected.

use crate::enumerate::ConnectedFamily;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Insect, LabelSet};
use crate::numeric::KahanSum;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// Hard limit on insect size handled by the bitmask dynamic program.
const MAX_LOCAL: usize = 30;

/// `mu_H = (-1)^|H| prod_{e in E(H)} phi_e(S)`, boundary vertices at `-`.
pub fn mu(h: &Insect) -> Complex64 {
    let product: Complex64 = h.edges().iter().map(|e| e.edge.phi(h.labels())).product();
    if h.size().is_multiple_of(2) {
        product
    } else {
        -product
    }
}

/// Counters collected while filling the tables.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct DpStats {
    /// Largest number of `(S1, S2)` pairs scanned for one insect.
    pub max_pairs_per_insect: u64,
    pub total_pairs: u64,
    /// Whether every insect `H` needed at most `4^|H|` pairs.
    pub pairs_within_bound: bool,
}

/// `a^(t)_S` for every connected `S` with `|S| <= t <= depth`.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    depth: usize,
    /// `entries[S][t - |S|] = a^(t)_S`.
    entries: HashMap<LabelSet, Vec<Complex64>>,
    stats: DpStats,
}

impl CoefficientTable {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn stats(&self) -> DpStats {
        self.stats
    }

    /// `a^(t)_S`, or `None` if `S` is not a key of table `t`.
    pub fn get(&self, t: usize, set: &LabelSet) -> Option<Complex64> {
        if t < set.len() || t > self.depth {
            return None;
        }
        self.entries.get(set).map(|a| a[t - set.len()])
    }

    /// Number of keys in table `t`.
    pub fn keys_at(&self, t: usize) -> usize {
        self.entries.keys().filter(|s| s.len() <= t).count()
    }
}

/// Power sums `p_1..p_m`; index 0 holds `p_1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PowerSums(pub Vec<Complex64>);

impl PowerSums {
    pub fn get(&self, t: usize) -> Complex64 {
        self.0[t - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Elementary symmetric values `e_1..e_m` with `Z = sum_i (-1)^i e_i lambda^i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ElementarySymmetric(pub Vec<Complex64>);

impl ElementarySymmetric {
    pub fn get(&self, i: usize) -> Complex64 {
        self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficients `c_0 = 1, c_i = (-1)^i e_i`.
    pub fn coefficients(&self) -> Vec<Complex64> {
        std::iter::once(Complex64::new(1.0, 0.0))
            .chain(
                self.0
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| if i % 2 == 0 { -e } else { e }),
            )
            .collect()
    }
}

/// An insect's labels with its edges re-expressed as local bitmasks.
struct LocalInsect<'a> {
    labels: &'a [u32],
    /// For each edge meeting the labels: (edge index, per-label bit in the edge).
    edges: Vec<(usize, Vec<(u32, usize)>)>,
}

impl<'a> LocalInsect<'a> {
    fn new(g: &Hypergraph, labels: &'a LabelSet) -> Self {
        let labels = labels.as_slice();
        let mut ids: Vec<usize> = labels
            .iter()
            .flat_map(|&v| g.incident(v).iter().copied())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let edges = ids
            .into_iter()
            .map(|id| {
                let bits = g.edges()[id]
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter_map(|(pos, v)| {
                        labels
                            .binary_search(v)
                            .ok()
                            .map(|local| (1u32 << local, pos))
                    })
                    .collect();
                (id, bits)
            })
            .collect();
        Self { labels, edges }
    }

    /// `mu` of every sub-insect, indexed by local mask.
    fn mu_table(&self, g: &Hypergraph) -> Vec<Complex64> {
        let s = self.labels.len();
        let mut table: Vec<Complex64> = (0..1u32 << s)
            .map(|mask| {
                if mask.count_ones() % 2 == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                }
            })
            .collect();
        for (id, bits) in &self.edges {
            let edge = &g.edges()[*id];
            let in_mask = bits.iter().fold(0u32, |m, (b, _)| m | b);
            for (mask, slot) in table.iter_mut().enumerate().skip(1) {
                let mask = mask as u32;
                if mask & in_mask == 0 {
                    continue;
                }
                let edge_mask = bits
                    .iter()
                    .filter(|(b, _)| mask & b != 0)
                    .fold(0usize, |m, (_, pos)| m | 1 << pos);
                *slot *= edge.activity().value(edge.size(), edge_mask);
            }
        }
        table
    }

    fn label_set(&self, mask: u32) -> LabelSet {
        let ids = (0..self.labels.len())
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| self.labels[j])
            .collect();
        LabelSet::from_sorted(ids)
    }
}

fn sign(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Iterates the non-empty submasks of `mask`, plus zero last.
fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// All orders `|H|..=depth` for one insect, given finished entries for its
/// proper subsets.
fn insect_entries(
    g: &Hypergraph,
    labels: &LabelSet,
    depth: usize,
    entries: &HashMap<LabelSet, Vec<Complex64>>,
) -> (Vec<Complex64>, u64) {
    let s = labels.len();
    let local = LocalInsect::new(g, labels);
    let mu = local.mu_table(g);
    let full: u32 = ((1u64 << s) - 1) as u32;

    // weights[S2][i] = sum over S1 with S1 ∪ S2 = H and |S1| = i of mu(S1)
    struct Part<'e> {
        size: usize,
        coeffs: Option<&'e [Complex64]>,
        weights: Vec<Complex64>,
    }
    let mut parts: Vec<Part> = Vec::new();
    let mut pairs = 0u64;
    for s2 in submasks(full).filter(|&m| m != 0) {
        let size2 = s2.count_ones() as usize;
        if size2 > depth - 1 && s2 != full {
            continue;
        }
        let coeffs = if s2 == full {
            None
        } else {
            match entries.get(&local.label_set(s2)) {
                Some(a) => Some(a.as_slice()),
                None => continue, // disconnected
            }
        };
        let comp = full & !s2;
        let mut weights = vec![Complex64::new(0.0, 0.0); s + 1];
        for x in submasks(s2) {
            let s1 = comp | x;
            if s1 == 0 {
                continue;
            }
            pairs += 1;
            weights[s1.count_ones() as usize] += mu[s1 as usize];
        }
        parts.push(Part {
            size: size2,
            coeffs,
            weights,
        });
    }

    let mut own: Vec<Complex64> = Vec::with_capacity(depth + 1 - s);
    for t in s..=depth {
        let mut acc = KahanSum::new();
        for part in &parts {
            // need i >= 1 and t - i >= |S2|
            let max_i = (t - part.size).min(s);
            for i in 1..=max_i {
                let w = part.weights[i];
                if w == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let prev = t - i;
                let a = match part.coeffs {
                    Some(c) => c[prev - part.size],
                    None => own[prev - s],
                };
                acc.add(sign(i - 1) * w * a);
            }
        }
        if t == s {
            acc.add(sign(t - 1) * t as f64 * mu[full as usize]);
        }
        own.push(acc.value());
    }
    (own, pairs)
}

/// Fills `a^(t)_S` for all `t <= depth` over a family enumerated to at least `depth`.
pub fn compute_tables(
    g: &Hypergraph,
    family: &ConnectedFamily,
    depth: usize,
) -> Result<CoefficientTable> {
    if depth == 0 {
        return Err(Error::ZeroOrder);
    }
    assert!(
        family.t_max() >= depth,
        "family enumerated to {} but depth {depth} requested",
        family.t_max()
    );
    assert!(depth <= MAX_LOCAL, "insects above {MAX_LOCAL} labels are not supported");

    let mut entries: HashMap<LabelSet, Vec<Complex64>> = HashMap::with_capacity(family.len());
    let mut stats = DpStats {
        pairs_within_bound: true,
        ..DpStats::default()
    };
    for size in 1..=depth {
        let level = family.of_size(size);
        let computed: Vec<(Vec<Complex64>, u64)> = level
            .par_iter()
            .map(|labels| insect_entries(g, labels, depth, &entries))
            .collect();
        for (labels, (vals, pairs)) in level.iter().zip(computed) {
            stats.total_pairs += pairs;
            stats.max_pairs_per_insect = stats.max_pairs_per_insect.max(pairs);
            if pairs > 4u64.saturating_pow(labels.len() as u32) {
                stats.pairs_within_bound = false;
            }
            entries.insert(labels.clone(), vals);
        }
    }
    Ok(CoefficientTable {
        depth,
        entries,
        stats,
    })
}

/// `p_t = sum_{S in T_t} a^(t)_S` for `t = 1..=m`, summed in family order.
pub fn power_sums(table: &CoefficientTable, family: &ConnectedFamily, m: usize) -> PowerSums {
    assert!(m <= table.depth(), "table depth {} < {m}", table.depth());
    let sums = (1..=m)
        .map(|t| {
            family
                .up_to(t)
                .map(|s| table.get(t, s).expect("every family member has an entry"))
                .collect::<KahanSum>()
                .value()
        })
        .collect();
    PowerSums(sums)
}

/// `e_t = ((-1)^(t-1) / t) (p_t - sum_{i<t} (-1)^(i-1) p_{t-i} e_i)`.
pub fn newton_invert(p: &PowerSums) -> ElementarySymmetric {
    let mut e: Vec<Complex64> = Vec::with_capacity(p.len());
    for t in 1..=p.len() {
        let mut acc = KahanSum::new();
        acc.add(p.get(t));
        for i in 1..t {
            acc.add(-sign(i - 1) * p.get(t - i) * e[i - 1]);
        }
        e.push(acc.value() * (sign(t - 1) / t as f64));
    }
    ElementarySymmetric(e)
}

/// Extends power sums to order `m` from the complete list `e_1..e_n`
/// (`e_i = 0` beyond `n`), via Newton's identities.
pub fn extend_power_sums(e: &ElementarySymmetric, known: &PowerSums, m: usize) -> PowerSums {
    let n = e.len();
    let mut p = known.0.clone();
    p.truncate(m);
    for t in p.len() + 1..=m {
        let mut acc = KahanSum::new();
        for i in 1..=n.min(t - 1) {
            acc.add(sign(i - 1) * p[t - i - 1] * e.get(i));
        }
        if t <= n {
            acc.add(sign(t - 1) * t as f64 * e.get(t));
        }
        p.push(acc.value());
    }
    PowerSums(p)
}
