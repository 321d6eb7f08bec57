//! Command reports: one payload, rendered as JSON or aligned text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), v.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let width = self.inputs.keys().chain(self.results.keys()).map(String::len).max().unwrap_or(0);
        for (title, map) in [("inputs", &self.inputs), ("results", &self.results)] {
            if map.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{title}:");
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "  {k:<width$}  {shown}");
            }
        }
        if !self.checks.is_empty() {
            let name_w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let _ = writeln!(out, "checks:");
            for c in &self.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "  {status}  [{}] {:<name_w$}  {:>8.2}s  {}",
                    c.criterion, c.name, c.seconds, c.detail
                );
            }
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(out, "  {} checks, {failed} failed", self.checks.len());
        }
        let _ = writeln!(out, "elapsed: {:.2}s", self.seconds);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_text() {
        let mut r = Report::new("h1");
        r.input("family", "gamma").input("n", 6);
        r.result("h1", "(Z/2)^19").result("generators", 360);
        r.checks.push(Check { criterion: 1, name: "gamma n=6".into(), passed: true, detail: "ok".into(), seconds: 0.5 });
        r.seconds = 1.25;
        let back = Report::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        let text = r.to_text();
        assert!(text.contains("h1          (Z/2)^19"));
        assert!(text.contains("PASS  [1] gamma n=6"));
        assert!(r.passed());
    }
}
