//! The JSON run report emitted by every command.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Exact values are rendered as decimal strings.
    pub value: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, value: impl ToString) -> Self {
        Check {
            name: name.into(),
            pass,
            value: value.to_string(),
        }
    }

    /// A check whose value must equal `expected`.
    pub fn equal<T: PartialEq + ToString>(name: impl Into<String>, actual: T, expected: T) -> Self {
        let pass = actual == expected;
        let value = if pass {
            actual.to_string()
        } else {
            format!("{} (expected {})", actual.to_string(), expected.to_string())
        };
        Check {
            name: name.into(),
            pass,
            value,
        }
    }

    pub fn failed(name: impl Into<String>, err: &crate::Error) -> Self {
        Check::new(name, false, format!("error: {err}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: Map<String, Value>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            params: Map::new(),
            checks: Vec::new(),
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params
            .insert(key.into(), Value::String(value.to_string()));
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// Records the wall time since [`RunReport::new`].
    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        writeln!(out, "{}", self.command).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "  {k} = {}", v.as_str().unwrap_or_default()).unwrap();
        }
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{mark}  {:width$}  {}", c.name, c.value).unwrap();
        }
        writeln!(out, "elapsed: {} ms", self.elapsed_ms).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = RunReport::new("shell").param("m", 3);
        r.push(Check::equal("size", 96u64, 96));
        r.push(Check::equal("other", 1u64, 2));
        let r = r.finish();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["command"], "shell");
        assert_eq!(v["params"]["m"], "3");
        assert_eq!(v["checks"][0]["value"], "96");
        assert_eq!(v["checks"][1]["pass"], false);
        assert!(v["elapsed_ms"].is_u64());
        assert_eq!(r.failing(), vec!["other"]);
        assert!(r.to_table().contains("FAIL  other"));
    }
}
