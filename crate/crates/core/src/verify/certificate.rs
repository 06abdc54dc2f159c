use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graph::{to_graph6, Graph};
use crate::TOOL_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Two or more classes share the maximum within tolerance.
    Tie,
    /// Parameters outside the harness's range; nothing was checked.
    Refused,
    /// The run could not decide, e.g. a search budget ran out.
    Inconclusive,
    /// Report-only run: values recorded, nothing asserted.
    Informational,
}

impl Verdict {
    /// Process exit status for the CLI.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Informational => 0,
            Verdict::Fail | Verdict::Tie => 1,
            Verdict::Refused => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Tie => "tie",
            Verdict::Refused => "refused",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Informational => "informational",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Graph { label: String, graph6: String },
    Value { label: String, value: f64 },
    Text { label: String, text: String },
    Record { label: String, data: Value },
}

impl Witness {
    pub fn graph(label: impl Into<String>, g: &Graph) -> Self {
        Witness::Graph {
            label: label.into(),
            graph6: to_graph6(g),
        }
    }

    pub fn value(label: impl Into<String>, value: f64) -> Self {
        Witness::Value {
            label: label.into(),
            value,
        }
    }

    pub fn text(label: impl Into<String>, text: impl Into<String>) -> Self {
        Witness::Text {
            label: label.into(),
            text: text.into(),
        }
    }

    pub fn record(label: impl Into<String>, data: impl Serialize) -> Self {
        Witness::Record {
            label: label.into(),
            data: serde_json::to_value(data).expect("witness data serializes"),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Witness::Graph { label, .. }
            | Witness::Value { label, .. }
            | Witness::Text { label, .. }
            | Witness::Record { label, .. } => label,
        }
    }
}

/// Record of one verification run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub check_id: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub tolerances: BTreeMap<String, f64>,
    pub runtime_ms: u64,
    pub tool_version: String,
    pub scope_note: String,
}

impl Certificate {
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("certificate serializes");
        v.as_object_mut()
            .expect("certificate is an object")
            .remove("runtime_ms");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn witness(&self, label: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.label() == label)
    }

    pub fn value(&self, label: &str) -> Option<f64> {
        match self.witness(label) {
            Some(Witness::Value { value, .. }) => Some(*value),
            _ => None,
        }
    }

    pub const CSV_HEADER: &'static str = "check_id,verdict,params,witnesses,runtime_ms";

    pub fn csv_row(&self) -> String {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!(
            "{},{},\"{}\",{},{}",
            self.check_id,
            self.verdict,
            params.join(";").replace('"', "'"),
            self.witnesses.len(),
            self.runtime_ms
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.check_id, self.verdict);
        for (k, v) in &self.params {
            out += &format!("  param {k} = {v}\n");
        }
        for w in &self.witnesses {
            match w {
                Witness::Graph { label, graph6 } => out += &format!("  {label}: {graph6}\n"),
                Witness::Value { label, value } => out += &format!("  {label}: {value}\n"),
                Witness::Text { label, text } => out += &format!("  {label}: {text}\n"),
                Witness::Record { label, .. } => out += &format!("  {label}: (record)\n"),
            }
        }
        if !self.scope_note.is_empty() {
            out += &format!("  note: {}\n", self.scope_note);
        }
        out += &format!("  {} ms, {}\n", self.runtime_ms, self.tool_version);
        out
    }
}

/// Accumulates a certificate while a harness runs.
pub(crate) struct Builder {
    cert: Certificate,
    start: Instant,
}

impl Builder {
    pub fn new(check_id: &str) -> Self {
        Builder {
            cert: Certificate {
                check_id: check_id.to_string(),
                params: BTreeMap::new(),
                verdict: Verdict::Inconclusive,
                witnesses: Vec::new(),
                tolerances: BTreeMap::new(),
                runtime_ms: 0,
                tool_version: TOOL_VERSION.to_string(),
                scope_note: String::new(),
            },
            start: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("param serializes");
        self.cert.params.insert(key.to_string(), v);
        self
    }

    pub fn tolerance(&mut self, key: &str, value: f64) -> &mut Self {
        self.cert.tolerances.insert(key.to_string(), value);
        self
    }

    pub fn witness(&mut self, w: Witness) -> &mut Self {
        self.cert.witnesses.push(w);
        self
    }

    pub fn note(&mut self, note: &str) -> &mut Self {
        self.cert.scope_note = note.to_string();
        self
    }

    pub fn finish(mut self, verdict: Verdict) -> Certificate {
        assert!(
            verdict != Verdict::Fail || !self.cert.witnesses.is_empty(),
            "fail verdict without a witness"
        );
        self.cert.verdict = verdict;
        self.cert.runtime_ms = self.start.elapsed().as_millis() as u64;
        self.cert
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Certificate {
        let mut b = Builder::new("demo");
        b.param("m", 7).param("k", 1).tolerance("eig", 1e-7);
        b.witness(Witness::graph("g", &Graph::path(4)))
            .witness(Witness::value("q", 0.1 + 0.2))
            .witness(Witness::text("name", "P4"))
            .witness(Witness::record("r", vec![1.5, f64::MIN_POSITIVE]));
        b.finish(Verdict::Fail)
    }

    #[test]
    fn json_round_trip() {
        let c = sample();
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
        assert!(!c.stable_json().contains("runtime_ms"));
        assert!(c.to_json().contains("\"verdict\": \"fail\""));
        assert_eq!(c.value("q"), Some(0.1 + 0.2));
    }

    #[test]
    #[should_panic(expected = "without a witness")]
    fn fail_requires_witness() {
        Builder::new("x").finish(Verdict::Fail);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Pass.exit_code(), 0);
        assert_eq!(Verdict::Informational.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 1);
        assert_eq!(Verdict::Tie.exit_code(), 1);
        assert_eq!(Verdict::Refused.exit_code(), 2);
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
    }
}
