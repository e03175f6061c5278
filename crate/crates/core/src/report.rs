//! Verification reports shared by the library checks and the CLI.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Note,
    Failure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

/// Outcome of a verification: a status, human-readable findings and a
/// machine-readable payload.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub findings: Vec<Finding>,
    pub payload: Value,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            status: Status::Pass,
            findings: Vec::new(),
            payload: Value::Null,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn fail(&mut self, message: impl Into<String>) {
        self.status = Status::Fail;
        self.findings.push(Finding {
            severity: Severity::Failure,
            message: message.into(),
        });
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.findings.push(Finding {
            severity: Severity::Note,
            message: message.into(),
        });
    }

    /// Records a failure when `ok` is false; returns `ok`.
    pub fn require(&mut self, ok: bool, message: impl FnOnce() -> String) -> bool {
        if !ok {
            self.fail(message());
        }
        ok
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Failure)
            .map(|f| f.message.as_str())
    }

    pub fn with_payload(mut self, payload: Value) -> Self {
        self.payload = payload;
        self
    }

    /// Folds a sub-report into this one, prefixing its findings.
    pub fn absorb(&mut self, sub: Report) {
        for f in sub.findings {
            let message = format!("{}: {}", sub.check, f.message);
            match f.severity {
                Severity::Failure => self.fail(message),
                Severity::Note => self.note(message),
            }
        }
        if sub.status == Status::Fail {
            self.status = Status::Fail;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{tag} {}", self.check)?;
        for finding in &self.findings {
            let mark = match finding.severity {
                Severity::Note => "  -",
                Severity::Failure => "  !",
            };
            write!(f, "\n{mark} {}", finding.message)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("demo");
        r.note("looked at 3 things");
        r.fail("thing 2 broke");
        let r = r.with_payload(serde_json::json!({"weights": ["2/7", "0/1"]}));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!back.passed());
        assert_eq!(back.failures().count(), 1);
    }

    #[test]
    fn absorbing_a_failure_fails_the_parent() {
        let mut parent = Report::new("all");
        let mut child = Report::new("child");
        child.fail("x");
        parent.absorb(child);
        assert!(!parent.passed());
        assert_eq!(parent.findings[0].message, "child: x");
    }
}
