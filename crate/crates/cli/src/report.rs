use serde::Serialize;
use serde_json::{json, Value};

use matlift::bits::{to_one_based, SubsetMask};

/// One named check with an optional witness.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

impl Check {
    pub fn new(name: &str, pass: bool, witness: Value) -> Self {
        Check { name: name.to_string(), pass, witness }
    }

    pub fn plain(name: &str, pass: bool) -> Self {
        Check::new(name, pass, Value::Null)
    }
}

/// Certificate emitted by every command. `wall_time_ms` is the only field
/// that varies between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub conclusion: String,
    pub details: Value,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The report without its timing, for comparisons.
    pub fn stable_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    }
}

pub fn set_json(set: SubsetMask) -> Value {
    json!(to_one_based(set))
}

pub fn family_json(family: &[SubsetMask]) -> Value {
    Value::Array(family.iter().map(|&s| set_json(s)).collect())
}
