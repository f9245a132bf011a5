//! Verification reports: one record per checked instance, emitted as JSON
//! lines or as a summary table.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{out_of_range, Result};
use crate::serial::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Passed, but only within the truncation; the full claim is not decided.
    CapLimited,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Instance {
    pub input: String,
    pub verdict: Verdict,
    pub certificate: Value,
    /// Present on failures: the offending simplex, horn or object.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub millis: u64,
}

impl Instance {
    pub fn new(input: impl Into<String>, holds: bool, certificate: &impl Serialize, started: Instant) -> Self {
        Self {
            input: input.into(),
            verdict: if holds { Verdict::Pass } else { Verdict::Fail },
            certificate: serde_json::to_value(certificate).expect("plain data"),
            witness: None,
            millis: started.elapsed().as_millis() as u64,
        }
    }

    pub fn cap_limited(mut self) -> Self {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::CapLimited;
        }
        self
    }

    pub fn with_witness(mut self, witness: Option<impl Serialize>) -> Self {
        if self.verdict == Verdict::Fail {
            self.witness = witness.map(|w| serde_json::to_value(w).expect("plain data"));
        }
        self
    }

    /// An instance that could not be computed.
    pub fn error(input: impl Into<String>, err: &crate::Error, started: Instant) -> Self {
        Self {
            input: input.into(),
            verdict: Verdict::Fail,
            certificate: Value::Null,
            witness: Some(Value::String(err.to_string())),
            millis: started.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub arity: usize,
    pub trunc: usize,
    pub cap: usize,
    pub check_dim: usize,
    pub seed: u64,
    /// Source of the multicosimplicial corpus; `None` for the built-in one.
    pub corpus: Option<String>,
    /// Directory for memoized nerve reports; not part of the report.
    #[serde(skip)]
    pub cache: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { arity: 2, trunc: 2, cap: 3, check_dim: 2, seed: crate::corpus::DEFAULT_SEED, corpus: None, cache: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.arity == 0 {
            return Err(out_of_range("arity", 0, "at least 1"));
        }
        if self.check_dim > self.cap {
            return Err(out_of_range("check_dim", self.check_dim as i64, format!("0..={}", self.cap)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    /// The statement the suite checks.
    pub claim: String,
    pub config: RunConfig,
    pub instances: Vec<Instance>,
}

#[derive(Serialize)]
struct Header<'a> {
    schema_version: u32,
    suite: &'a str,
    claim: &'a str,
    config: &'a RunConfig,
    instances: usize,
    failures: usize,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|i| i.verdict == Verdict::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// A header line followed by one line per instance.
    pub fn to_json_lines(&self, with_timing: bool) -> String {
        let header = Header {
            schema_version: SCHEMA_VERSION,
            suite: &self.suite,
            claim: &self.claim,
            config: &self.config,
            instances: self.instances.len(),
            failures: self.failures(),
        };
        let mut out = serde_json::to_string(&header).expect("plain data");
        out.push('\n');
        for inst in &self.instances {
            let mut v = serde_json::to_value(inst).expect("plain data");
            if !with_timing {
                v.as_object_mut().expect("record").remove("millis");
            }
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_table(&self) -> String {
        let width = self.instances.iter().map(|i| i.input.chars().count()).max().unwrap_or(5).max(5);
        let mut out = format!("{}: {}\n", self.suite, self.claim);
        let _ = writeln!(out, "  {:<width$}  {:<11}  {:>8}", "input", "verdict", "ms");
        for i in &self.instances {
            let v = match i.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::CapLimited => "cap-limited",
            };
            let _ = writeln!(out, "  {:<width$}  {:<11}  {:>8}", i.input, v, i.millis);
        }
        let _ = writeln!(out, "  {} instances, {} failed", self.instances.len(), self.failures());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_lines_without_timing_are_stable() {
        let t = Instant::now();
        let r = VerificationReport {
            suite: "s".into(),
            claim: "c".into(),
            config: RunConfig::default(),
            instances: vec![Instance::new("a", true, &[1, 2], t), Instance::new("b", false, &"x", t).with_witness(Some(3))],
        };
        let text = r.to_json_lines(false);
        assert_eq!(text.lines().count(), 3);
        assert!(!text.contains("millis"));
        assert!(text.lines().nth(2).unwrap().contains("\"witness\":3"));
        assert_eq!(r.failures(), 1);
        assert!(r.to_table().contains("FAIL"));
        assert!(RunConfig { check_dim: 5, ..RunConfig::default() }.validate().is_err());
    }
}
