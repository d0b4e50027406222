//! Pass/fail reports produced by the verification suites.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Record an error as a failed check.
    pub fn push_result<T>(
        &mut self,
        label: impl Into<String>,
        r: crate::Result<T>,
        ok_detail: impl FnOnce(T) -> String,
    ) {
        match r {
            Ok(v) => self.push(label, true, ok_detail(v)),
            Err(e) => self.push(label, false, e.to_string()),
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.label)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.label, c.detail)?;
            }
        }
        write!(
            f,
            "{}: {}/{} passed",
            self.title,
            self.passed_count(),
            self.checks.len()
        )
    }
}
