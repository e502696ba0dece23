//! Hypergraphs with two-spin edge activities, and the labelled sub-structures
//! ("insects") the coefficient computation is built on.
//!
//! Vertices are dense ids `0..n`. Every hyperedge stores its vertex list
//! sorted and duplicate-free; parallel edges are kept and count towards the
//! degree of their vertices.

mod activity;
mod insect;
pub mod json;

pub use activity::{EdgeActivity, SpinTable};
pub use insect::{Insect, InsectEdge};

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct LabelSet(Vec<u32>);

impl LabelSet {
    pub fn new(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    /// Trusts the caller that `ids` is already sorted and duplicate-free.
    pub(crate) fn from_sorted(ids: Vec<u32>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Self(ids)
    }

    pub fn singleton(v: u32) -> Self {
        Self(vec![v])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset_of(&self, other: &LabelSet) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn union(&self, other: &LabelSet) -> LabelSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        LabelSet(out)
    }

    /// Copy with `v` inserted in order.
    pub fn with(&self, v: u32) -> LabelSet {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        LabelSet(out)
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl From<&[u32]> for LabelSet {
    fn from(ids: &[u32]) -> Self {
        LabelSet::new(ids.to_vec())
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    vertices: Vec<u32>,
    activity: EdgeActivity,
}

impl Hyperedge {
    /// Sorts the vertex list (permuting a spin table along with it) and
    /// validates size, duplicates, table length and normalization. Errors
    /// report edge index 0; [`Hypergraph::new`] rewrites it.
    pub fn new(vertices: Vec<u32>, activity: EdgeActivity) -> Result<Self> {
        let k = vertices.len();
        if k < 2 {
            return Err(Error::EdgeTooSmall { edge: 0, size: k });
        }
        let mut perm: Vec<usize> = (0..k).collect();
        perm.sort_by_key(|&j| vertices[j]);
        let sorted: Vec<u32> = perm.iter().map(|&j| vertices[j]).collect();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex { edge: 0, id: w[0] });
        }
        let activity = match activity {
            EdgeActivity::IsingBeta(b) => EdgeActivity::IsingBeta(b),
            EdgeActivity::SpinTable(table) => {
                if table.len() != 1 << k {
                    return Err(Error::TableSize {
                        edge: 0,
                        got: table.len(),
                        expected: 1 << k,
                    });
                }
                let all_minus = table.get(0);
                if all_minus != Complex64::new(1.0, 0.0) {
                    return Err(Error::NotNormalized {
                        edge: 0,
                        value: format!("{all_minus}"),
                    });
                }
                EdgeActivity::SpinTable(table.permuted(&perm))
            }
        };
        Ok(Self {
            vertices: sorted,
            activity,
        })
    }

    pub fn ising(vertices: Vec<u32>, beta: f64) -> Result<Self> {
        Self::new(vertices, EdgeActivity::IsingBeta(beta))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn activity(&self) -> &EdgeActivity {
        &self.activity
    }

    pub fn meets(&self, set: &LabelSet) -> bool {
        self.vertices.iter().any(|&v| set.contains(v))
    }

    /// `phi_e(S)`: the edge weight with exactly the vertices of `plus` set to `+`.
    pub fn phi(&self, plus: &LabelSet) -> Complex64 {
        let mut mask = 0usize;
        for (j, &v) in self.vertices.iter().enumerate() {
            if plus.contains(v) {
                mask |= 1 << j;
            }
        }
        self.activity.value(self.size(), mask)
    }

    pub fn is_symmetric(&self) -> bool {
        self.activity.is_symmetric(self.size())
    }

    pub(crate) fn conjugated(&self) -> Self {
        Self {
            vertices: self.vertices.clone(),
            activity: self.activity.conjugated(),
        }
    }
}

fn at_edge(err: Error, edge: usize) -> Error {
    match err {
        Error::EdgeTooSmall { size, .. } => Error::EdgeTooSmall { edge, size },
        Error::DuplicateVertex { id, .. } => Error::DuplicateVertex { edge, id },
        Error::TableSize { got, expected, .. } => Error::TableSize {
            edge,
            got,
            expected,
        },
        Error::NotNormalized { value, .. } => Error::NotNormalized { edge, value },
        other => other,
    }
}

/// Hypergraph on vertices `0..n` with an ordered multiset of hyperedges.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
    names: Option<Vec<String>>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.names == other.names
    }
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.size() < 2 {
                return Err(at_edge(Error::EdgeTooSmall { edge: 0, size: e.size() }, i));
            }
            for &v in e.vertices() {
                if v as usize >= n {
                    return Err(Error::VertexOutOfRange { id: v, n });
                }
                incidence[v as usize].push(i);
            }
        }
        Ok(Self {
            n,
            edges,
            names: None,
            incidence,
        })
    }

    /// Builds edges from raw parts, re-labelling validation errors with the
    /// edge index.
    pub fn from_parts(n: usize, parts: Vec<(Vec<u32>, EdgeActivity)>) -> Result<Self> {
        let edges = parts
            .into_iter()
            .enumerate()
            .map(|(i, (v, a))| Hyperedge::new(v, a).map_err(|e| at_edge(e, i)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, edges)
    }

    /// Ising hypergraph where every edge carries its own `beta`.
    pub fn ising(n: usize, edges: &[(&[u32], f64)]) -> Result<Self> {
        Self::from_parts(
            n,
            edges
                .iter()
                .map(|(v, b)| (v.to_vec(), EdgeActivity::IsingBeta(*b)))
                .collect(),
        )
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("edgeless hypergraph is valid")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Schema(format!(
                "{} names given for {} vertices",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// Edge ids incident to `v`, with multiplicity.
    pub fn incident(&self, v: u32) -> &[usize] {
        &self.incidence[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.incidence[v as usize].len()
    }

    /// Maximum degree, counting parallel edges with multiplicity.
    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(Hyperedge::size).max().unwrap_or(0)
    }

    /// Vertices sharing an edge with `v` (excluding `v`), sorted.
    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.incidence[v as usize]
            .iter()
            .flat_map(|&e| self.edges[e].vertices().iter().copied())
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_ising(&self) -> bool {
        self.edges
            .iter()
            .all(|e| matches!(e.activity(), EdgeActivity::IsingBeta(_)))
    }

    /// Index of the first edge whose table is not conjugate-symmetric.
    pub fn first_asymmetric_edge(&self) -> Option<usize> {
        self.edges.iter().position(|e| !e.is_symmetric())
    }

    /// Same hypergraph with every activity conjugated.
    pub fn conjugated(&self) -> Self {
        Self {
            n: self.n,
            edges: self.edges.iter().map(Hyperedge::conjugated).collect(),
            names: self.names.clone(),
            incidence: self.incidence.clone(),
        }
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Self {
        let shift = self.n as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Hyperedge {
            vertices: e.vertices.iter().map(|v| v + shift).collect(),
            activity: e.activity.clone(),
        }));
        Self::new(self.n + other.n, edges).expect("union of valid hypergraphs is valid")
    }

    fn check_ids(&self, ids: &[u32]) -> Result<()> {
        match ids.iter().find(|&&v| v as usize >= self.n) {
            Some(&v) => Err(Error::VertexOutOfRange { id: v, n: self.n }),
            None => Ok(()),
        }
    }

    /// `ind(G, S) = (S, {e : e meets S})`.
    pub fn induced(&self, ids: &[u32]) -> Result<Insect> {
        self.check_ids(ids)?;
        let labels = LabelSet::new(ids.to_vec());
        let mut ids: Vec<usize> = labels
            .iter()
            .flat_map(|v| self.incidence[v as usize].iter().copied())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        let edges = ids
            .into_iter()
            .map(|id| InsectEdge {
                id,
                edge: self.edges[id].clone(),
            })
            .collect();
        Ok(Insect::from_parts(labels, edges))
    }

    /// The whole hypergraph viewed as an insect (empty boundary).
    pub fn as_insect(&self) -> Insect {
        let all: Vec<u32> = (0..self.n as u32).collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(id, e)| InsectEdge {
                id,
                edge: e.clone(),
            })
            .collect();
        Insect::from_parts(LabelSet::from_sorted(all), edges)
    }
}
