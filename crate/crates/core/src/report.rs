//! Verification reports: a flat list of named pass/fail checks.

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    pub details: Value,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: impl Into<String>, pass: bool, details: Value) {
        self.checks.push(Check { check: check.into(), pass, details });
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.check = format!("{prefix}.{}", c.check);
            self.checks.push(c);
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// `{}` for an empty report, otherwise `{"checks": [...], "pass": bool}`.
    pub fn to_json(&self) -> Value {
        if self.checks.is_empty() {
            return json!({});
        }
        json!({ "checks": self.checks, "pass": self.pass() })
    }

    /// One line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.pass { "ok  " } else { "FAIL" };
            if c.details.is_null() || c.details == json!({}) {
                out.push_str(&format!("{tag} {}\n", c.check));
            } else {
                out.push_str(&format!("{tag} {} {}\n", c.check, c.details));
            }
        }
        let failed = self.failures().count();
        if failed == 0 {
            out.push_str("all checks passed\n");
        } else {
            out.push_str(&format!("{failed} of {} checks failed\n", self.checks.len()));
        }
        out
    }
}
