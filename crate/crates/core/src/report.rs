//! Check results with 1-based loci.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

/// Where a violation happened: a labelled tuple of 0-based indices, shown
/// 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locus {
    pub label: String,
    pub index: Vec<usize>,
}

impl Locus {
    pub fn new<const N: usize>(label: &str, index: [usize; N]) -> Self {
        Locus { label: label.to_string(), index: index.to_vec() }
    }

    pub fn from_vec(label: &str, index: Vec<usize>) -> Self {
        Locus { label: label.to_string(), index }
    }

    /// 1-based indices as displayed.
    pub fn one_based(&self) -> Vec<usize> {
        self.index.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(usize::to_string).collect();
        write!(f, "({})=({})", self.label, parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub check: String,
    pub locus: Locus,
    pub details: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
struct CheckTally {
    instances: usize,
    skipped: Option<String>,
}

/// Aggregated results of a validation run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    tallies: BTreeMap<String, CheckTally>,
    order: Vec<String>,
    violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    fn tally(&mut self, check: &str) -> &mut CheckTally {
        if !self.tallies.contains_key(check) {
            self.order.push(check.to_string());
        }
        self.tallies.entry(check.to_string()).or_default()
    }

    pub fn fail(&mut self, check: &str, locus: Locus, details: String) {
        self.tally(check);
        self.violations.push(Violation { check: check.to_string(), locus, details });
    }

    /// Record that `instances` cases of `check` were examined.
    pub fn pass_count(&mut self, check: &str, instances: usize) {
        self.tally(check).instances += instances;
    }

    pub fn skip(&mut self, check: &str, reason: String) {
        self.tally(check).skipped = Some(reason);
    }

    pub fn merge(&mut self, other: Report) {
        for name in other.order {
            let t = &other.tallies[&name];
            let mine = self.tally(&name);
            mine.instances += t.instances;
            if t.skipped.is_some() {
                mine.skipped = t.skipped.clone();
            }
        }
        self.violations.extend(other.violations);
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn status(&self, check: &str) -> Option<Status> {
        let t = self.tallies.get(check)?;
        Some(if self.violations.iter().any(|v| v.check == check) {
            Status::Fail
        } else if t.skipped.is_some() {
            Status::Skipped
        } else {
            Status::Pass
        })
    }

    pub fn instances(&self, check: &str) -> usize {
        self.tallies.get(check).map_or(0, |t| t.instances)
    }

    pub fn checks(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }

    /// First violation of `check`, if any.
    pub fn first_violation(&self, check: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.check == check)
    }

    /// One JSON object per check and per violation.
    pub fn json_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for name in &self.order {
            let t = &self.tallies[name];
            let status = self.status(name).unwrap();
            let failures = self.violations.iter().filter(|v| &v.check == name).count();
            let mut obj = json!({
                "check": name,
                "status": status.as_str(),
                "instances": t.instances,
                "failures": failures,
            });
            if let Some(reason) = &t.skipped {
                obj["details"] = json!(reason);
            }
            lines.push(obj.to_string());
        }
        for v in &self.violations {
            lines.push(
                json!({
                    "check": v.check,
                    "status": "fail",
                    "locus": { "label": v.locus.label, "index": v.locus.one_based() },
                    "details": v.details,
                })
                .to_string(),
            );
        }
        lines
    }

    /// Human-readable table.
    pub fn summary(&self) -> String {
        let width = self.order.iter().map(String::len).max().unwrap_or(5).max(5);
        let mut out = format!("{:<width$}  {:<7}  {:>9}  {:>8}\n", "check", "status", "instances", "failures");
        for name in &self.order {
            let failures = self.violations.iter().filter(|v| &v.check == name).count();
            out.push_str(&format!(
                "{:<width$}  {:<7}  {:>9}  {:>8}\n",
                name,
                self.status(name).unwrap().as_str(),
                self.tallies[name].instances,
                failures
            ));
        }
        out.push_str(&format!("{} violation(s)\n", self.violations.len()));
        out
    }
}
