//! Verification reports: named checks comparing an expected value against a
//! computed one.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Printed in the published literature on the curve.
    Published,
    /// Fixed by an independent computation (enumeration, an oracle, or a
    /// first recorded run).
    Derived,
    /// True by construction.
    Identity,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Published => "published",
            Provenance::Derived => "derived",
            Provenance::Identity => "identity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub provenance: Provenance,
    pub computed: Value,
    pub pass: bool,
}

impl Check {
    /// Passes iff `computed == expected` as JSON values.
    pub fn equal(name: impl Into<String>, provenance: Provenance, expected: impl Serialize, computed: impl Serialize) -> Self {
        let expected = to_value(expected);
        let computed = to_value(computed);
        let pass = expected == computed;
        Self { name: name.into(), expected, provenance, computed, pass }
    }

    /// A check whose verdict is decided by the caller.
    pub fn verdict(name: impl Into<String>, provenance: Provenance, expected: impl Serialize, computed: impl Serialize, pass: bool) -> Self {
        Self { name: name.into(), expected: to_value(expected), provenance, computed: to_value(computed), pass }
    }

    /// A failed check carrying an error message as its computed value.
    pub fn error(name: impl Into<String>, provenance: Provenance, expected: impl Serialize, err: impl std::fmt::Display) -> Self {
        Self { name: name.into(), expected: to_value(expected), provenance, computed: Value::String(format!("error: {err}")), pass: false }
    }

    pub fn truth(name: impl Into<String>, provenance: Provenance, computed: bool) -> Self {
        Self::equal(name, provenance, true, computed)
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub field_mode: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(command: &str, field_mode: &str) -> Self {
        Self { command: command.to_string(), field_mode: field_mode.to_string(), checks: Vec::new(), pass: true, timing_ms: 0 }
    }

    pub fn push(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.push(c);
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    /// The report with the timing zeroed, for comparisons across runs.
    pub fn without_timing(&self) -> Self {
        Self { timing_ms: 0, ..self.clone() }
    }

    pub fn to_json(&self) -> Value {
        to_value(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "== {} [{}] {} ({} ms)", self.command, self.field_mode, verdict, self.timing_ms);
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  {mark} {:width$}  [{}]", c.name, c.provenance.as_str());
            if !c.pass {
                let _ = writeln!(s, "       expected: {}", c.expected);
                let _ = writeln!(s, "       computed: {}", c.computed);
            } else if !matches!(c.computed, Value::Bool(_)) {
                let _ = writeln!(s, "       value: {}", short(&c.computed));
            }
        }
        s
    }
}

fn short(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 100 {
        let head: String = s.chars().take(97).collect();
        format!("{head}...")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_verdict_tracks_checks() {
        let mut r = Report::new("x", "f73");
        r.push(Check::equal("a", Provenance::Identity, 1, 1));
        assert!(r.pass);
        r.push(Check::equal("b", Provenance::Derived, [1, 2], [2, 1]));
        assert!(!r.pass);
        assert_eq!(r.first_failure().unwrap().name, "b");
        let text = r.to_text();
        assert!(text.contains("FAIL b"));
    }

    #[test]
    fn json_schema_fields() {
        let mut r = Report::new("basis", "exact");
        r.push(Check::truth("t", Provenance::Published, true));
        let v = r.to_json();
        for k in ["command", "field_mode", "checks", "pass", "timing_ms"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["checks"][0]["provenance"], "published");
    }
}
