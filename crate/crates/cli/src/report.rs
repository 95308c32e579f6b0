//! Machine-readable reports: one JSON object per invocation, deterministic
//! apart from the timing field, which golden comparisons exclude.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "tubecheck-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Failed,
    NonEquivalent,
    Inconclusive,
    Error,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Verified | Verdict::NonEquivalent => 0,
            Verdict::Failed | Verdict::Inconclusive => 1,
            Verdict::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Wall-clock milliseconds; excluded from golden comparison.
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: &str, verdict: Verdict) -> Self {
        Report {
            schema: SCHEMA.into(),
            command: command.into(),
            verdict,
            residual_terms: None,
            values: BTreeMap::new(),
            error: None,
            elapsed_ms: 0,
        }
    }

    pub fn error(command: &str, message: String) -> Self {
        let mut r = Report::new(command, Verdict::Error);
        r.error = Some(message);
        r
    }

    pub fn with_value(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.into(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        let verdict = serde_json::to_value(&self.verdict).expect("verdict serializes");
        out.push_str(&format!("verdict: {}\n", verdict.as_str().unwrap_or("?")));
        if let Some(n) = self.residual_terms {
            out.push_str(&format!("residual terms: {}\n", n));
        }
        for (k, v) in &self.values {
            out.push_str(&format!("{}: {}\n", k, v));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {}\n", e));
        }
        out.push_str(&format!("elapsed: {} ms\n", self.elapsed_ms));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_is_lossless() {
        let r = Report::new("verify-sphericity", Verdict::Verified)
            .with_value("family", "St")
            .with_value("t", "symbolic");
        let text = r.to_json();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back.command, r.command);
        assert_eq!(back.verdict, r.verdict);
        assert_eq!(back.values, r.values);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Verified.exit_code(), 0);
        assert_eq!(Verdict::NonEquivalent.exit_code(), 0);
        assert_eq!(Verdict::Failed.exit_code(), 1);
        assert_eq!(Verdict::Inconclusive.exit_code(), 1);
        assert_eq!(Verdict::Error.exit_code(), 2);
    }
}
