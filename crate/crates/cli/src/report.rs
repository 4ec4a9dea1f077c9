use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::spec::SpecFile;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    /// The spec after command-line overrides.
    pub input: SpecFile,
    /// Whether every invariant the command checks held.
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilized: Option<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<String>>>,
    /// Command-specific payload.
    pub result: Value,
    pub warnings: Vec<String>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, input: SpecFile) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            input,
            passed: true,
            dims: None,
            stabilized: None,
            representatives: None,
            result: Value::Null,
            warnings: Vec::new(),
            timing_ms: 0.0,
        }
    }

    pub fn fully_stable(&self) -> bool {
        self.stabilized.as_ref().is_none_or(|s| s.iter().all(|&b| b))
    }

    pub fn render_human(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, if self.passed { "ok" } else { "FAILED" });
        if let Some(dims) = &self.dims {
            for (p, d) in dims.iter().enumerate() {
                let stable = match self.stabilized.as_ref().and_then(|s| s.get(p)) {
                    Some(true) => "stable",
                    Some(false) => "NOT stable",
                    None => "",
                };
                let reps = self.representatives.as_ref().and_then(|r| r.get(p)).filter(|r| !r.is_empty());
                let reps = reps.map(|r| format!("  [{}]", r.join(", "))).unwrap_or_default();
                out.push_str(&format!("  H^{p} = {d:<3} {stable}{reps}\n"));
            }
        }
        render_value(&self.result, 1, &mut out);
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push_str(&format!("({:.1} ms)\n", self.timing_ms));
        pretty_wedges(&out)
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    if let Value::Object(map) = v {
        for (k, v) in map {
            match v {
                Value::Object(_) => {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_value(v, indent + 1, out);
                }
                Value::Array(items) if items.iter().all(|x| !x.is_object()) => {
                    let parts: Vec<String> = items.iter().map(scalar).collect();
                    out.push_str(&format!("{pad}{k}: [{}]\n", parts.join(", ")));
                }
                Value::Array(items) => {
                    out.push_str(&format!("{pad}{k}:\n"));
                    for item in items {
                        out.push_str(&format!("{pad}  - {}\n", inline(item)));
                    }
                }
                _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
            }
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}", inline(v))).collect::<Vec<_>>().join(", "),
        other => scalar(other),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// `dx^dy` becomes `dx∧dy`; exponents such as `x^2` are left alone.
pub fn pretty_wedges(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::with_capacity(s.len());
    for (i, &c) in chars.iter().enumerate() {
        if c == '^' && chars.get(i + 1).is_some_and(|n| n.is_alphabetic()) {
            out.push('∧');
        } else {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedges_and_exponents() {
        assert_eq!(pretty_wedges("x^2*dx^dy + eps1^eps2"), "x^2*dx∧dy + eps1∧eps2");
    }
}
