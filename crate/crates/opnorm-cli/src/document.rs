//! Result documents: the machine-readable record of one computation,
//! serialized canonically so identical inputs and seeds give identical
//! bytes.

use serde_json::{json, Map, Value};

use opnorm::detect::DetectionReport;
use opnorm::oracle::OracleEstimate;
use opnorm::{ExactResult, NormQuery};

use crate::canonical::{fmt_f64, fmt_rounded, to_canonical_string};
use crate::witness::CheckOutcome;

pub const SCHEMA_VERSION: &str = "opnorm/1";

pub struct DocumentBuilder {
    fields: Map<String, Value>,
}

impl DocumentBuilder {
    pub fn new(digest: &str, query: NormQuery) -> Self {
        let mut fields = Map::new();
        fields.insert("schema_version".into(), json!(SCHEMA_VERSION));
        fields.insert("input_digest".into(), json!(digest));
        fields.insert(
            "query".into(),
            json!({"q": query.q.to_string(), "r": query.r.to_string()}),
        );
        DocumentBuilder { fields }
    }

    pub fn detection(mut self, report: &DetectionReport) -> Self {
        self.fields.insert(
            "detection".into(),
            json!({
                "kinds": report.kinds(),
                "tolerances": {
                    "orth": report.tolerances.orth,
                    "rank_one": report.tolerances.rank_one,
                    "structural": report.tolerances.structural,
                    "entry": report.tolerances.entry,
                },
            }),
        );
        self
    }

    pub fn exact(mut self, exact: &ExactResult) -> Self {
        self.fields.insert(
            "exact".into(),
            json!({
                "value": exact.value,
                "class": exact.certificate.kind(),
                "citation": exact.citation,
                "maximizer": exact.maximizer,
            }),
        );
        self
    }

    pub fn estimate(mut self, est: &OracleEstimate) -> Self {
        self.fields.insert(
            "estimate".into(),
            json!({
                "value": est.value,
                "candidate": est.candidate,
                "converged": est.converged,
                "seed": est.seed,
            }),
        );
        self
    }

    pub fn bound(mut self, value: f64, formula: &str) -> Self {
        self.fields
            .insert("bound".into(), json!({"value": value, "formula": formula}));
        self
    }

    pub fn gap(mut self, gap: f64) -> Self {
        self.fields.insert("gap".into(), json!(gap));
        self
    }

    pub fn leg(mut self, leg: &str) -> Self {
        self.fields.insert("leg".into(), json!(leg));
        self
    }

    pub fn verification(mut self, class: &str, passed: bool, checks: &[CheckOutcome]) -> Self {
        self.fields.insert(
            "verification".into(),
            json!({
                "class": class,
                "passed": passed,
                "checks": checks,
            }),
        );
        self
    }

    pub fn build(self) -> Value {
        Value::Object(self.fields)
    }
}

/// Canonical JSON rendering (one line, sorted keys, 17-digit floats).
pub fn render_json(doc: &Value) -> String {
    to_canonical_string(doc)
}

/// Human-readable table: full-precision values plus a rounded column.
pub fn render_table(doc: &Value) -> String {
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(&format!("{k:<18} {v}\n"));
    };
    if let Some(q) = doc.pointer("/query") {
        push(
            "query",
            format!(
                "q = {}, r = {}",
                q["q"].as_str().unwrap_or("?"),
                q["r"].as_str().unwrap_or("?")
            ),
        );
    }
    if let Some(d) = doc.pointer("/input_digest").and_then(Value::as_str) {
        push("input digest", d.to_string());
    }
    if let Some(kinds) = doc.pointer("/detection/kinds").and_then(Value::as_array) {
        let names: Vec<&str> = kinds.iter().filter_map(Value::as_str).collect();
        push(
            "detection",
            if names.is_empty() {
                "(no structural class)".into()
            } else {
                names.join(", ")
            },
        );
    }
    if let Some(v) = doc.pointer("/exact/value").and_then(Value::as_f64) {
        push("exact value", format!("{}  (~ {})", fmt_f64(v), fmt_rounded(v)));
        if let Some(c) = doc.pointer("/exact/class").and_then(Value::as_str) {
            push("exact class", c.to_string());
        }
    }
    if let Some(v) = doc.pointer("/estimate/value").and_then(Value::as_f64) {
        push(
            "estimate value",
            format!("{}  (~ {})", fmt_f64(v), fmt_rounded(v)),
        );
        if let Some(s) = doc.pointer("/estimate/seed").and_then(Value::as_u64) {
            push("estimate seed", s.to_string());
        }
    }
    if let Some(v) = doc.pointer("/bound/value").and_then(Value::as_f64) {
        push("bound value", format!("{}  (~ {})", fmt_f64(v), fmt_rounded(v)));
    }
    if let Some(v) = doc.pointer("/gap").and_then(Value::as_f64) {
        push("gap", fmt_f64(v));
    }
    if let Some(v) = doc.pointer("/leg").and_then(Value::as_str) {
        push("identity leg", v.to_string());
    }
    if let Some(checks) = doc.pointer("/verification/checks").and_then(Value::as_array) {
        for c in checks {
            let name = c["name"].as_str().unwrap_or("?");
            let passed = c["passed"].as_bool().unwrap_or(false);
            let detail = c["detail"].as_str().unwrap_or("");
            push(
                &format!("check {name}"),
                format!("{} {detail}", if passed { "PASS" } else { "FAIL" }),
            );
        }
        if let Some(passed) = doc.pointer("/verification/passed").and_then(Value::as_bool) {
            push("verification", if passed { "PASS".into() } else { "FAIL".into() });
        }
    }
    out
}
