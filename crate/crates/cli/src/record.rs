use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// One self-describing JSON record per run. `parameters` echoes every input,
/// so the record alone is enough to reproduce the result.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
    pub wall_time_seconds: f64,
}

impl RunRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}
