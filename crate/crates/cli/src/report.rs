//! The report envelope shared by every command, and its text rendering.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_NAME: &str = "noulrich";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: Tool,
    pub command: Vec<String>,
    /// SHA-256 over the command line and the bytes of every input file.
    pub input_digest: String,
    pub results: Value,
    pub passed: bool,
    pub exit_code: i32,
    pub timing_ms: u64,
}

pub fn digest(command: &[String], inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for arg in command {
        h.update(arg.as_bytes());
        h.update([0]);
    }
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `path = value` pairs. Arrays of scalars stay whole (as compact JSON);
/// objects and arrays of objects are expanded with dotted paths.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn go(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let key = |k: &str| {
            if prefix.is_empty() {
                k.to_string()
            } else {
                format!("{prefix}.{k}")
            }
        };
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    go(&key(k), x, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in items.iter().enumerate() {
                    go(&key(&i.to_string()), x, out);
                }
            }
            other => out.push((prefix.to_string(), scalar_text(other))),
        }
    }
    let mut out = Vec::new();
    go("", v, &mut out);
    out
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {} {}: {}\n", self.tool.name, self.tool.version, self.command.join(" "));
        if self.command.first().is_some_and(|c| c == "corpus") {
            out.push_str(&crate::corpus::table(&self.results));
        } else {
            for (k, v) in flatten(&self.results) {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        out.push_str(&format!("passed = {}\n", self.passed));
        out.push_str(&format!("input_digest = {}\n", self.input_digest));
        out.push_str(&format!("timing_ms = {}\n", self.timing_ms));
        out
    }
}

/// Drop every `timing_ms` field, recursively.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing_ms");
            for x in map.values_mut() {
                strip_timing(x);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
