//! Machine-readable reports emitted by the `invk` binary.
//!
//! A report holds only the outcome of exact computations, so two runs with
//! the same input and flags serialize to the same bytes. Timing goes to the
//! human summary on stderr.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The configuration lies outside the claim being tested, so a failing
    /// diagram is a finding rather than a defect.
    Exploratory,
}

impl Verdict {
    /// Process exit code: 2 for a mathematical failure, 0 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Fail => 2,
            Verdict::Pass | Verdict::Exploratory => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub algebra: String,
    /// Witnesses name generators positionally as `x1..xn`; this maps each
    /// position to the label used in the definition file.
    pub labels: BTreeMap<String, String>,
    pub parameters: Parameters,
    pub anchor: String,
    pub verdict: Verdict,
    pub counts: BTreeMap<String, usize>,
    pub checks: Vec<Check>,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub results: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: &str, input: &str, algebra: &str, labels: &[String], anchor: &str) -> Self {
        Self {
            command: command.to_string(),
            input: input.to_string(),
            algebra: algebra.to_string(),
            labels: labels
                .iter()
                .enumerate()
                .map(|(i, l)| (format!("x{}", i + 1), l.clone()))
                .collect(),
            parameters: Parameters::default(),
            anchor: anchor.to_string(),
            verdict: Verdict::Pass,
            counts: BTreeMap::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            results: BTreeMap::new(),
        }
    }

    pub fn count(&mut self, name: &str, value: usize) {
        self.counts.insert(name.to_string(), value);
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn result(&mut self, name: &str, value: impl Into<String>) {
        self.results.insert(name.to_string(), value.into());
    }

    /// `Fail` if any check failed, `Pass` otherwise. An exploratory run
    /// stays exploratory either way.
    pub fn settle(&mut self, exploratory: bool) {
        self.verdict = if exploratory {
            Verdict::Exploratory
        } else if self.checks.iter().all(|c| c.passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only strings, numbers and maps")
    }

    /// A few lines for a human reader.
    pub fn summary(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Exploratory => "EXPLORATORY",
        };
        let mut out = format!("{verdict}  {} {} [{}]\n", self.command, self.algebra, self.anchor);
        if !self.counts.is_empty() {
            let counts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "  counts: {}", counts.join(", "));
        }
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = match &c.detail {
                Some(d) => writeln!(out, "  {mark} {}: {d}", c.name),
                None => writeln!(out, "  {mark} {}", c.name),
            };
        }
        for (k, v) in &self.results {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for w in self.witnesses.iter().take(5) {
            let _ = writeln!(out, "  witness: {w}");
        }
        if self.witnesses.len() > 5 {
            let _ = writeln!(out, "  ... {} more witnesses in the JSON report", self.witnesses.len() - 5);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let mut r = Report::new("pbw", "a.json", "a", &["h".into()], "anchor");
        r.check("one", true, None);
        r.settle(false);
        assert_eq!(r.verdict, Verdict::Pass);
        r.check("two", false, Some("witness".into()));
        r.settle(false);
        assert_eq!(r.verdict.exit_code(), 2);
        r.settle(true);
        assert_eq!(r.verdict, Verdict::Exploratory);
        assert!(r.to_json().contains("\"x1\": \"h\""));
        assert!(r.summary().starts_with("EXPLORATORY"));
    }
}
