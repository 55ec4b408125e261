//! JSON report emitted by every command.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "tool_version": "0.1.0",
//!   "command": "verify hecke",
//!   "config": { ... },
//!   "verdicts": [{"verdict": "MEMBER", "clause": "bs.generic", "citation": {...}, "inputs": {...}}],
//!   "properties": [{"name": "...", "passed": true, "seed": 7, "detail": {...}}],
//!   "evidence": {"name": ...},
//!   "passed": true
//! }
//! ```
//! `timing_ms` appears only with `--timing`, so default reports are byte-identical
//! across reruns.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::sigma::{Citation, SigmaVerdict, Verdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct VerdictBlock {
    pub verdict: Verdict,
    pub clause: &'static str,
    pub citation: Citation,
    pub inputs: Value,
}

impl From<SigmaVerdict> for VerdictBlock {
    fn from(v: SigmaVerdict) -> Self {
        VerdictBlock { verdict: v.verdict, clause: v.clause.tag(), citation: v.clause.citation(), inputs: v.inputs }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub config: Value,
    pub verdicts: Vec<VerdictBlock>,
    pub properties: Vec<PropertyResult>,
    pub evidence: Map<String, Value>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &impl Serialize) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config: serde_json::to_value(config).expect("config serializes"),
            verdicts: vec![],
            properties: vec![],
            evidence: Map::new(),
            passed: true,
            timing_ms: None,
        }
    }

    pub fn property(&mut self, name: &str, passed: bool, seed: Option<u64>, detail: Value) {
        self.passed &= passed;
        self.properties.push(PropertyResult { name: name.into(), passed, seed, detail });
    }

    pub fn evidence(&mut self, name: &str, value: impl Serialize) {
        self.evidence.insert(name.into(), serde_json::to_value(value).expect("evidence serializes"));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text view of the same data.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}  [{}]\n", self.command, if self.passed { "PASS" } else { "FAIL" });
        for v in &self.verdicts {
            out += &format!("  {:<10} {:<18} {}\n", v.verdict.to_string(), v.clause, v.citation.formula);
        }
        for p in &self.properties {
            out += &format!("  {:<4} {}\n", if p.passed { "ok" } else { "FAIL" }, p.name);
        }
        for k in self.evidence.keys() {
            out += &format!("  evidence: {k}\n");
        }
        if let Some(ms) = self.timing_ms {
            out += &format!("  {ms} ms\n");
        }
        out
    }
}
