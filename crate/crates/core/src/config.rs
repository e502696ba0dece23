use serde::Serialize;

/// Caps and tolerances shared by the pipeline stages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Config {
    /// Largest vertex count the brute-force oracle accepts.
    pub oracle_cap: usize,
    /// Largest coefficient depth (connected-set size) the dynamic program may reach.
    pub m_cap: usize,
    /// Largest Taylor truncation order.
    pub series_cap: usize,
    /// Largest number of label sets the enumerator may hold.
    pub memory_cap: usize,
    /// Allowed `||r| - 1|` when certifying zeros on the unit circle.
    pub tol_circle: f64,
    /// Allowed `|Z(r)| / max_j |c_j|` for a reported root.
    pub tol_residual: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            oracle_cap: 24,
            m_cap: 24,
            series_cap: 1_000_000,
            memory_cap: 1 << 26,
            tol_circle: 1e-6,
            tol_residual: 1e-8,
        }
    }
}
