use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use yb_core::rack::{RackError, RackTable};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RackSummary {
    pub size: usize,
    pub quandle: bool,
    pub inner_group_order: usize,
    pub classes: Vec<Vec<usize>>,
    pub faithful: bool,
}

impl RackSummary {
    pub fn of(rack: &RackTable) -> Result<Self, RackError> {
        let p = rack.behavior_partition();
        Ok(Self {
            size: rack.size(),
            quandle: rack.is_quandle(),
            inner_group_order: rack.inner_group()?.order(),
            classes: p.classes().to_vec(),
            faithful: p.is_faithful(),
        })
    }
}

/// One result line. `status` is `None` for informational values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Item {
    pub key: String,
    pub value: Value,
    pub status: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub rack: Option<RackSummary>,
    pub results: Vec<Item>,
    pub passed: bool,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            rack: None,
            results: Vec::new(),
            passed: true,
            elapsed_ms: 0.0,
        }
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl Serialize) {
        self.push(key, value, None);
    }

    pub fn check(&mut self, key: impl Into<String>, value: impl Serialize, ok: bool) {
        self.push(key, value, Some(ok));
    }

    fn push(&mut self, key: impl Into<String>, value: impl Serialize, status: Option<bool>) {
        if status == Some(false) {
            self.passed = false;
        }
        self.results.push(Item {
            key: key.into(),
            value: serde_json::to_value(value).expect("report values serialize"),
            status,
        });
    }

    /// Human-readable rendering: one `key = value` line per item, values
    /// other than strings in their JSON form, multi-line strings as an
    /// indented block.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "command: {}", self.command.join(" ")).unwrap();
        if let Some(r) = &self.rack {
            let classes: Vec<String> = r
                .classes
                .iter()
                .map(|c| format!("{{{}}}", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")))
                .collect();
            writeln!(
                s,
                "rack: size {}, {}, |Inn| = {}, {} behavior classes {}, {}",
                r.size,
                if r.quandle { "quandle" } else { "rack" },
                r.inner_group_order,
                r.classes.len(),
                classes.join(" "),
                if r.faithful { "faithful" } else { "not faithful" }
            )
            .unwrap();
        }
        for item in &self.results {
            let tag = match item.status {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "    ",
            };
            match &item.value {
                Value::String(v) if v.contains('\n') => {
                    writeln!(s, "{tag} {}:", item.key).unwrap();
                    for line in v.lines() {
                        writeln!(s, "       {line}").unwrap();
                    }
                }
                Value::String(v) => writeln!(s, "{tag} {} = {v}", item.key).unwrap(),
                v => writeln!(s, "{tag} {} = {v}", item.key).unwrap(),
            }
        }
        writeln!(
            s,
            "result: {} ({:.1} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed_ms
        )
        .unwrap();
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
