//! The single report each run writes to stdout.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use weightlab::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    /// Input literals as given, plus the arithmetic mode.
    pub params: BTreeMap<String, String>,
    pub entries: Vec<Entry>,
    /// Infinite highest weight family, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hw_lattice: Option<Entry>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub kind: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorHead>,
    /// Residual, exponent or other figure of merit for checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
}

/// Closed-form tag of a generator and its leading coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorHead {
    pub kind: String,
    pub coefficients_head: Vec<Scalar>,
}

impl Document {
    pub fn new(command: &str) -> Self {
        Document {
            command: command.to_string(),
            params: BTreeMap::new(),
            entries: Vec::new(),
            hw_lattice: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Plain-text rendering; diagnostics are left to the caller.
    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "{} {}", self.command, params.join(" "));
        for e in self.entries.iter().chain(&self.hw_lattice) {
            let mut line = String::from("  ");
            if let Some(p) = e.passed {
                line.push_str(if p { "PASS " } else { "FAIL " });
            }
            line.push_str(&e.kind);
            if let Some(l) = e.label.as_ref().filter(|l| **l != e.kind) {
                let _ = write!(line, " {l}");
            }
            for (k, v) in &e.params {
                let _ = write!(line, " {k}={v}");
            }
            if let Some(v) = e.value {
                let _ = write!(line, " value={v:.3e}");
            }
            if let Some(g) = &e.generator {
                let head: Vec<String> = g.coefficients_head.iter().take(4).map(|c| c.to_string()).collect();
                let _ = write!(line, " generator={} [{}, ...]", g.kind, head.join(", "));
            }
            let _ = writeln!(out, "{line}");
        }
        out
    }
}
