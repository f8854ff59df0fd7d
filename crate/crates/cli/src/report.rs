use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Outcome {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Failure {
    pub id: String,
    pub diagnostic: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outcomes: Vec<Outcome>,
    pub failures: Vec<Failure>,
    pub toolkit_version: String,
    pub catalog_version: String,
}

impl RunReport {
    pub fn new(command: &str, inputs: BTreeMap<String, String>, catalog_version: &str) -> Self {
        RunReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            outcomes: Vec::new(),
            failures: Vec::new(),
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            catalog_version: catalog_version.to_string(),
        }
    }

    pub fn pass(&mut self, id: &str, timing_ms: Option<u64>, detail: Value) {
        self.outcomes.push(Outcome {
            id: id.to_string(),
            status: Status::Pass,
            timing_ms,
            detail,
        });
    }

    pub fn fail(&mut self, id: &str, timing_ms: Option<u64>, diagnostic: String, detail: Value) {
        self.outcomes.push(Outcome {
            id: id.to_string(),
            status: Status::Fail,
            timing_ms,
            detail,
        });
        self.failures.push(Failure {
            id: id.to_string(),
            diagnostic,
        });
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// Left-aligned text table.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(header.iter().map(|s| s.to_string()).collect());
    out.push('\n');
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect()));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.clone()));
        out.push('\n');
    }
    out
}
