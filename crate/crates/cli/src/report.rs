use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// Envelope written to standard output by every subcommand.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the input document, or of the parameters when there is none.
    pub input_digest: String,
    pub parameters: Value,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guarantee: Option<bool>,
    pub timings_ms: BTreeMap<String, f64>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Collects stage timings in milliseconds.
#[derive(Debug, Default)]
pub struct Timings(BTreeMap<String, f64>);

impl Timings {
    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = std::time::Instant::now();
        let out = f();
        self.record(stage, start.elapsed().as_secs_f64() * 1e3);
        out
    }

    pub fn record(&mut self, stage: &str, ms: f64) {
        *self.0.entry(stage.to_string()).or_default() += ms;
    }

    pub fn into_map(self) -> BTreeMap<String, f64> {
        self.0
    }
}
