//! Partition functions of two-spin hypergraph models: exact brute force,
//! connected-insect power sums, truncated log-series approximation and
//! Lee-Yang zero-freeness tools.

pub mod coefficients;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod hypergraph;
pub mod leeyang;
pub mod numeric;
pub mod oracle;
pub mod random;
pub mod taylor;

pub use config::Config;
pub use error::{Error, Result};
pub use hypergraph::{EdgeActivity, Hyperedge, Hypergraph, Insect, InsectEdge, LabelSet, SpinTable};
