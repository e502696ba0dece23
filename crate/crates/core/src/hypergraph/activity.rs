use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative slack used when testing table symmetry.
const SYMMETRY_TOL: f64 = 1e-12;

/// Full two-spin table of a hyperedge.
///
/// Entry `mask` holds `phi(sigma)` where bit `j` of `mask` is set iff the
/// `j`-th vertex of the (sorted) edge carries spin `+`. Entry 0 is the
/// all-minus configuration and is always exactly 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinTable {
    values: Vec<Complex64>,
}

impl SpinTable {
    /// Wraps raw values; callers are responsible for the length and the
    /// normalization (checked by [`crate::Hypergraph::new`]).
    pub fn from_values(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, mask: usize) -> Complex64 {
        self.values[mask]
    }

    /// Reorders the table after the edge's vertex list was permuted:
    /// new position `j` holds the vertex that sat at `perm[j]`.
    pub(crate) fn permuted(&self, perm: &[usize]) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for (new_mask, slot) in values.iter_mut().enumerate() {
            let mut old_mask = 0usize;
            for (j, &old) in perm.iter().enumerate() {
                if new_mask >> j & 1 == 1 {
                    old_mask |= 1 << old;
                }
            }
            *slot = self.values[old_mask];
        }
        Self { values }
    }
}

/// Activity attached to a hyperedge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EdgeActivity {
    /// Ising edge: weight 1 on constant configurations, `beta` otherwise.
    IsingBeta(f64),
    /// General two-spin table.
    SpinTable(SpinTable),
}

impl EdgeActivity {
    /// `phi(sigma)` for an edge of size `k`, where `mask` marks the `+` vertices.
    #[inline]
    pub fn value(&self, k: usize, mask: usize) -> Complex64 {
        match self {
            EdgeActivity::IsingBeta(beta) => {
                if mask == 0 || mask == (1 << k) - 1 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(*beta, 0.0)
                }
            }
            EdgeActivity::SpinTable(table) => table.get(mask),
        }
    }

    /// Expands to the explicit table for an edge of size `k`.
    pub fn to_table(&self, k: usize) -> SpinTable {
        match self {
            EdgeActivity::SpinTable(table) => table.clone(),
            EdgeActivity::IsingBeta(_) => {
                SpinTable::from_values((0..1usize << k).map(|m| self.value(k, m)).collect())
            }
        }
    }

    pub fn ising_beta(&self) -> Option<f64> {
        match self {
            EdgeActivity::IsingBeta(beta) => Some(*beta),
            EdgeActivity::SpinTable(_) => None,
        }
    }

    /// `phi(sigma) == conj(phi(-sigma))` for every configuration.
    pub fn is_symmetric(&self, k: usize) -> bool {
        match self {
            EdgeActivity::IsingBeta(_) => true,
            EdgeActivity::SpinTable(table) => {
                let full = (1usize << k) - 1;
                (0..=full).all(|mask| {
                    let a = table.get(mask);
                    let b = table.get(full ^ mask).conj();
                    (a - b).norm() <= SYMMETRY_TOL * (1.0 + a.norm().max(b.norm()))
                })
            }
        }
    }

    /// Activity with every table entry conjugated. Ising edges are unchanged.
    pub fn conjugated(&self) -> Self {
        match self {
            EdgeActivity::IsingBeta(beta) => EdgeActivity::IsingBeta(*beta),
            EdgeActivity::SpinTable(table) => EdgeActivity::SpinTable(SpinTable::from_values(
                table.values.iter().map(|v| v.conj()).collect(),
            )),
        }
    }
}
