use super::{Hyperedge, LabelSet};
use crate::error::{Error, Result};

/// Hyperedge inside an insect, tagged with its index in the host hypergraph
/// so parallel edges stay distinguishable.
#[derive(Debug, Clone, PartialEq)]
pub struct InsectEdge {
    pub id: usize,
    pub edge: Hyperedge,
}

/// A label set `S` together with hyperedges that each meet `S`.
///
/// Kept in canonical form: labels sorted, edges sorted by vertex list (then
/// host id). Structural equality is therefore canonical-form equality.
#[derive(Debug, Clone, PartialEq)]
pub struct Insect {
    labels: LabelSet,
    edges: Vec<InsectEdge>,
}

impl Insect {
    pub fn new(labels: LabelSet, edges: Vec<InsectEdge>) -> Result<Self> {
        if let Some(e) = edges.iter().find(|e| !e.edge.meets(&labels)) {
            return Err(Error::EdgeMissesLabels(e.id));
        }
        Ok(Self::from_parts(labels, edges))
    }

    pub(crate) fn from_parts(labels: LabelSet, mut edges: Vec<InsectEdge>) -> Self {
        edges.sort_by(|a, b| {
            a.edge
                .vertices()
                .cmp(b.edge.vertices())
                .then(a.id.cmp(&b.id))
        });
        edges.dedup_by(|a, b| a.id == b.id);
        Self { labels, edges }
    }

    pub fn labels(&self) -> &LabelSet {
        &self.labels
    }

    pub fn edges(&self) -> &[InsectEdge] {
        &self.edges
    }

    /// `|H|`, the number of labels.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Vertices covered by the edges but outside the label set.
    pub fn boundary(&self) -> LabelSet {
        let covered: Vec<u32> = self
            .edges
            .iter()
            .flat_map(|e| e.edge.vertices().iter().copied())
            .filter(|&v| !self.labels.contains(v))
            .collect();
        LabelSet::new(covered)
    }

    /// Connectivity of the traces `e ∩ S` on the label set.
    pub fn is_connected(&self) -> Result<bool> {
        let labels = self.labels.as_slice();
        if labels.is_empty() {
            return Err(Error::EmptyLabelSet);
        }
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = labels.len();
        for e in &self.edges {
            let mut first: Option<usize> = None;
            for &v in e.edge.vertices() {
                if let Ok(pos) = labels.binary_search(&v) {
                    match first {
                        None => first = Some(pos),
                        Some(f) => {
                            let (a, b) = (find(&mut parent, f), find(&mut parent, pos));
                            if a != b {
                                parent[a] = b;
                                components -= 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(components == 1)
    }

    /// `ind(H, T) = (T, {e in E(H) : e meets T})`; `T` must be a subset of the labels.
    pub fn induced(&self, ids: &[u32]) -> Result<Insect> {
        if let Some(&v) = ids.iter().find(|&&v| !self.labels.contains(v)) {
            return Err(Error::NotASubset(v));
        }
        let labels = LabelSet::new(ids.to_vec());
        let edges = self
            .edges
            .iter()
            .filter(|e| e.edge.meets(&labels))
            .cloned()
            .collect();
        Ok(Self::from_parts(labels, edges))
    }

    /// Union `(S1 ∪ S2, E1 ∪ E2)` if it induces both insects back, else `None`.
    pub fn compatible(&self, other: &Insect) -> Option<Insect> {
        let labels = self.labels.union(&other.labels);
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        let host = Self::from_parts(labels, edges);
        let back1 = host.induced(self.labels.as_slice()).ok()?;
        let back2 = host.induced(other.labels.as_slice()).ok()?;
        (back1 == *self && back2 == *other).then_some(host)
    }
}
