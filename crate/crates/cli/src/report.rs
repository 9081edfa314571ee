use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::scene::SceneFile;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Declared tolerance for numeric verdicts; exact verdicts have none.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Outcome of one command. Exact quantities are stored as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    /// The scene with every option resolved; re-running on it reproduces
    /// this report.
    pub scene: SceneFile,
    pub verdicts: Vec<Verdict>,
    pub values: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str, scene: SceneFile) -> Self {
        Report { command: command.into(), scene, verdicts: Vec::new(), values: BTreeMap::new() }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn value(&mut self, key: &str, v: impl Serialize) {
        self.values.insert(key.into(), serde_json::to_value(v).expect("report values serialize"));
    }

    pub fn exact(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.into(), passed, detail: detail.into(), tolerance: None });
    }

    pub fn numeric(&mut self, name: &str, measured: f64, tol: f64) {
        self.verdicts.push(Verdict {
            name: name.into(),
            passed: measured < tol,
            detail: format!("{measured:.3e} (tolerance {tol:e})"),
            tolerance: Some(tol),
        });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    /// Human-readable summary: values first, then one line per verdict.
    pub fn render(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in &self.values {
            match v {
                Value::String(s) => writeln!(out, "{k}: {s}"),
                Value::Array(items) if items.iter().all(Value::is_string) => {
                    items.iter().try_for_each(|s| writeln!(out, "{k} {}", s.as_str().unwrap_or_default()))
                }
                other => writeln!(out, "{k}: {other}"),
            }
            .expect("writing to a string");
        }
        for v in &self.verdicts {
            let tag = if v.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} {}: {}", v.name, v.detail).expect("writing to a string");
        }
        out
    }
}
