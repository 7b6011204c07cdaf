use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::baselines::PairScore;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigScore {
    pub config_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub score: f64,
}

/// The JSON document written by the `ggi` and `baseline` commands.
///
/// Floats are written in shortest round-trip form, so re-parsing yields the
/// exact in-memory values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub index_name: String,
    pub index_value: f64,
    pub index_percent: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_config: Option<Vec<ConfigScore>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_pair: Option<Vec<PairScore>>,
    pub options: serde_json::Value,
    pub metadata: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    /// Only present when timings were requested, since they vary run to run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
