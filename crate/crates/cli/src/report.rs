use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

pub const SCHEMA: &str = "toric-gkz.report/1";

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Everything a command computed. The serialized body holds no timestamps or
/// timings, so identical inputs give byte-identical reports.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub facts: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub status: &'static str,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            schema: SCHEMA,
            command,
            inputs: Vec::new(),
            facts: BTreeMap::new(),
            checks: Vec::new(),
            status: "pass",
            timings: Vec::new(),
        }
    }

    pub fn input(&mut self, path: &str, bytes: &[u8]) {
        let digest = hex::encode(Sha256::digest(bytes));
        self.inputs.push(InputDigest { path: path.to_string(), sha256: digest });
    }

    pub fn fact(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("fact serializes");
        self.facts.insert(key.to_string(), v);
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        if !passed {
            self.status = "fail";
        }
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = std::time::Instant::now();
        let out = f();
        self.timings.push((stage.to_string(), start.elapsed()));
        out
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "toric-gkz {}", self.command.join(" ")).unwrap();
        for i in &self.inputs {
            writeln!(out, "input {} sha256:{}", i.path, i.sha256).unwrap();
        }
        for (k, v) in &self.facts {
            match v {
                Value::String(s) if !s.contains('\n') => writeln!(out, "{k}: {s}").unwrap(),
                Value::String(s) => {
                    writeln!(out, "{k}:").unwrap();
                    for line in s.lines() {
                        writeln!(out, "  {line}").unwrap();
                    }
                }
                Value::Array(items) if !items.is_empty() && items.iter().all(|x| x.as_str().is_some_and(|s| s.contains(' '))) => {
                    writeln!(out, "{k}:").unwrap();
                    for x in items {
                        writeln!(out, "  {}", x.as_str().unwrap()).unwrap();
                    }
                }
                other => writeln!(out, "{k}: {other}").unwrap(),
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => writeln!(out, "{mark} {}: {d}", c.name).unwrap(),
                None => writeln!(out, "{mark} {}", c.name).unwrap(),
            }
        }
        writeln!(out, "status: {}", self.status).unwrap();
        out
    }

    pub fn timings_text(&self) -> String {
        let mut out = String::new();
        for (stage, d) in &self.timings {
            writeln!(out, "timing {stage}: {:.3}s", d.as_secs_f64()).unwrap();
        }
        out
    }
}
