//! Report documents and their canonical renderings.
//!
//! Reports serialize with sorted keys at every level (serde_json maps are
//! B-tree backed), so identical inputs and seed give byte-identical output.
//! Wall-clock timing is printed to stderr and only written into the JSON
//! under --timing, keeping the canonical output reproducible.

use qplab_core::Validation;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub const TOOL_NAME: &str = "qplab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: String,
    pub holds: bool,
}

impl Check {
    pub fn le(name: &str, lhs: f64, rhs: f64) -> Check {
        Check {
            name: name.to_string(),
            lhs,
            rhs,
            relation: "<=".into(),
            holds: lhs <= rhs,
        }
    }

    pub fn ge(name: &str, lhs: f64, rhs: f64) -> Check {
        Check {
            name: name.to_string(),
            lhs,
            rhs,
            relation: ">=".into(),
            holds: lhs >= rhs,
        }
    }

    pub fn eq_flag(name: &str, ok: bool) -> Check {
        Check {
            name: name.to_string(),
            lhs: if ok { 1.0 } else { 0.0 },
            rhs: 1.0,
            relation: "=".into(),
            holds: ok,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupMeta {
    pub name: Option<String>,
    pub n: usize,
    pub hash: String,
    pub validation: String,
}

impl GroupMeta {
    pub fn of(group: &qplab_core::FiniteGroup) -> GroupMeta {
        GroupMeta {
            name: group.name().map(str::to_string),
            n: group.n(),
            hash: format!("{:016x}", group.hash()),
            validation: match group.validation() {
                Validation::Full => "full".into(),
                Validation::Sampled => "sampled".into(),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub group: Option<GroupMeta>,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            group: None,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            checks: Vec::new(),
            seed: 0,
            timing_ms: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: Value) -> &mut Self {
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn output(&mut self, key: &str, value: Value) -> &mut Self {
        self.outputs.insert(key.to_string(), value);
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "command": self.command,
            "group": self.group.as_ref().map(|g| serde_json::to_value(g).unwrap()),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks.iter().map(|c| serde_json::to_value(c).unwrap()).collect::<Vec<_>>(),
            "seed": self.seed,
            "timing_ms": self.timing_ms,
        })
    }

    /// Canonical JSON: pretty, sorted keys, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Flatten reports of one kind into CSV. Columns: command, group, n, the
/// scalar output keys (sorted), then lhs/rhs/holds per check name (sorted).
pub fn emit_table(reports: &[Value]) -> Result<String, String> {
    let mut kinds: Vec<&str> = reports
        .iter()
        .map(|r| r.get("command").and_then(Value::as_str).unwrap_or(""))
        .collect();
    kinds.dedup();
    if kinds.len() > 1 {
        return Err(format!("mixed report kinds: {kinds:?}"));
    }
    let mut out_keys: Vec<String> = Vec::new();
    let mut check_names: Vec<String> = Vec::new();
    for r in reports {
        if let Some(outputs) = r.get("outputs").and_then(Value::as_object) {
            for (k, v) in outputs {
                if is_scalar(v) && !out_keys.contains(k) {
                    out_keys.push(k.clone());
                }
            }
        }
        for c in checks_of(r) {
            if let Some(name) = c.get("name").and_then(Value::as_str) {
                if !check_names.iter().any(|n| n == name) {
                    check_names.push(name.to_string());
                }
            }
        }
    }
    out_keys.sort();
    check_names.sort();
    let mut header: Vec<String> = vec!["command".into(), "group".into(), "n".into()];
    header.extend(out_keys.iter().cloned());
    for name in &check_names {
        header.push(format!("{name}.lhs"));
        header.push(format!("{name}.rhs"));
        header.push(format!("{name}.holds"));
    }
    let mut lines = vec![header.join(",")];
    for r in reports {
        let mut row: Vec<String> = Vec::with_capacity(header.len());
        row.push(csv_field(
            r.get("command").and_then(Value::as_str).unwrap_or(""),
        ));
        let group = r.get("group");
        row.push(csv_field(
            group
                .and_then(|g| g.get("name"))
                .and_then(Value::as_str)
                .unwrap_or(""),
        ));
        row.push(
            group
                .and_then(|g| g.get("n"))
                .map(render_scalar)
                .unwrap_or_default(),
        );
        let outputs = r.get("outputs").and_then(Value::as_object);
        for key in &out_keys {
            row.push(
                outputs
                    .and_then(|o| o.get(key))
                    .map(render_scalar)
                    .unwrap_or_default(),
            );
        }
        for name in &check_names {
            let found = checks_of(r)
                .into_iter()
                .find(|c| c.get("name").and_then(Value::as_str) == Some(name));
            match found {
                Some(c) => {
                    row.push(c.get("lhs").map(render_scalar).unwrap_or_default());
                    row.push(c.get("rhs").map(render_scalar).unwrap_or_default());
                    row.push(c.get("holds").map(render_scalar).unwrap_or_default());
                }
                None => {
                    row.extend([String::new(), String::new(), String::new()]);
                }
            }
        }
        lines.push(row.join(","));
    }
    Ok(lines.join("\n") + "\n")
}

fn checks_of(r: &Value) -> Vec<&Map<String, Value>> {
    r.get("checks")
        .and_then(Value::as_array)
        .map(|arr| arr.iter().filter_map(Value::as_object).collect())
        .unwrap_or_default()
}

fn is_scalar(v: &Value) -> bool {
    matches!(
        v,
        Value::Null | Value::Bool(_) | Value::Number(_) | Value::String(_)
    )
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(x) => x.to_string(),
        Value::String(s) => csv_field(s),
        other => csv_field(&other.to_string()),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
