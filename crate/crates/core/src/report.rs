use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// Result of an exhaustive count or a sampled property check.
///
/// `count` is the census value for counting runs and the number of
/// counterexamples for verifiers. `passed` is `None` for pure censuses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub census: String,
    pub parameters: BTreeMap<String, u64>,
    pub count: u64,
    /// Cases examined (words, pairs, triples or trials).
    pub checked: u64,
    pub reference_value: Option<f64>,
    pub passed: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Wall-clock time. Left out of serialized output unless set, so that
    /// repeated runs print identical bytes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl CensusReport {
    pub fn new(census: &str) -> Self {
        CensusReport {
            census: census.to_string(),
            parameters: BTreeMap::new(),
            count: 0,
            checked: 0,
            reference_value: None,
            passed: None,
            rows: Vec::new(),
            notes: Vec::new(),
            runtime_ms: None,
        }
    }

    pub fn param(mut self, name: &str, value: u64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    /// True unless a verifier recorded a failure.
    pub fn ok(&self) -> bool {
        self.passed != Some(false)
    }
}

pub(crate) struct Stopwatch(Instant);

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch(Instant::now())
    }

    pub(crate) fn elapsed_ms(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}

/// One line of a trend table: a measured count against a reference curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, u64>,
    pub measured: u64,
    pub reference: f64,
    pub ratio: f64,
}

impl ExperimentRow {
    pub fn new(n: usize, k: usize, measured: u64, reference: f64) -> Self {
        assert!(reference > 0.0, "reference curve must be positive");
        ExperimentRow {
            n,
            k,
            extra: BTreeMap::new(),
            measured,
            reference,
            ratio: measured as f64 / reference,
        }
    }
}
