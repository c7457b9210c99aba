use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use sccat_core::{Budget, Verdict};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub kind: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &str, kind: &str, bytes: &[u8]) -> Self {
        InputDigest { path: path.to_string(), kind: kind.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// One decision or computation. Decisions carry a verdict document and the
/// outcome of re-validating its payload; computations carry only `result`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
    #[serde(skip)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub enum Outcome {
    #[default]
    Yes,
    Unknown,
    No,
}

impl Check {
    pub fn decision(name: &str, v: &Verdict, verified: bool) -> Self {
        let outcome = match v {
            Verdict::No(_) if verified => Outcome::No,
            Verdict::Yes(_) if verified => Outcome::Yes,
            _ => Outcome::Unknown,
        };
        Check {
            name: name.to_string(),
            verdict: Some(v.to_document()),
            result: None,
            verified: v.is_definite().then_some(verified),
            wall_ms: None,
            outcome,
        }
    }

    pub fn computed(name: &str, result: Value) -> Self {
        Check { name: name.to_string(), verdict: None, result: Some(result), verified: None, wall_ms: None, outcome: Outcome::Yes }
    }

    pub fn with_result(mut self, result: Value) -> Self {
        self.result = Some(result);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub budget: Budget,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<Check>,
    pub summary: &'static str,
}

impl Report {
    pub fn new(command: &str, budget: Budget, inputs: Vec<InputDigest>, checks: Vec<Check>) -> Self {
        let mut r = Report {
            tool: "sccat",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            budget,
            inputs,
            checks,
            summary: "",
        };
        r.summary = match r.outcome() {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Unknown => "unknown",
        };
        r
    }

    pub fn outcome(&self) -> Outcome {
        self.checks.iter().map(|c| c.outcome).max().unwrap_or_default()
    }

    pub fn exit_code(&self) -> u8 {
        match self.outcome() {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Unknown => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.tool, self.version, self.command);
        let b = &self.budget;
        out.push_str(&format!("budget max_dim={} max_words={} max_steps={}\n", b.max_dim, b.max_words, b.max_steps));
        for i in &self.inputs {
            out.push_str(&format!("input {} {} sha256:{}\n", i.path, i.kind, i.sha256));
        }
        for c in &self.checks {
            out.push_str(&format!("check {}", c.name));
            if let Some(v) = &c.verdict {
                out.push_str(&format!(": {}", v["verdict"].as_str().unwrap_or("?")));
                if v["qualifier"].as_object().is_some_and(|q| !q.is_empty()) {
                    out.push_str(&format!(" {}", v["qualifier"]));
                }
                match c.verified {
                    Some(true) => out.push_str(" (verified)"),
                    Some(false) => out.push_str(" (payload failed re-validation)"),
                    None => {}
                }
            }
            if let Some(ms) = c.wall_ms {
                out.push_str(&format!(" [{ms} ms]"));
            }
            out.push('\n');
            if let Some(w) = c.verdict.as_ref().map(|v| &v["witness"]).filter(|w| !w.is_null()) {
                out.push_str(&format!("  witness {w}\n"));
            }
            if let Some(r) = &c.result {
                out.push_str(&format!("  result {r}\n"));
            }
        }
        out.push_str(&format!("summary {}\n", self.summary));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sccat_core::{Evidence, UnknownReason};

    #[test]
    fn no_outranks_unknown() {
        let checks = vec![
            Check::decision("a", &Verdict::Yes(Evidence::Isomorphism), true),
            Check::decision("b", &Verdict::Unknown(UnknownReason::BudgetExhausted), true),
            Check::decision("c", &Verdict::No(Evidence::Components { count: 2 }), true),
        ];
        let r = Report::new("x", Budget::default(), Vec::new(), checks);
        assert_eq!((r.exit_code(), r.summary), (1, "no"));
    }

    #[test]
    fn unverified_payloads_count_as_unknown() {
        let r = Report::new("x", Budget::default(), Vec::new(), vec![Check::decision("a", &Verdict::Yes(Evidence::Isomorphism), false)]);
        assert_eq!(r.exit_code(), 2);
    }
}
