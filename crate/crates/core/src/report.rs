//! Structured pass/fail results with witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A concrete counterexample to an identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    /// Labels of the basis elements the identity was evaluated on.
    pub witness: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at ({}): {} != {}",
            self.check,
            self.witness.join(", "),
            self.lhs,
            self.rhs
        )
    }
}

/// Outcome of one named family of identities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Number of basis instances evaluated.
    pub cases: usize,
    /// Instances skipped because they exceed a degree cap.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl Check {
    pub fn pass(name: impl Into<String>, cases: usize) -> Self {
        Check { name: name.into(), passed: true, cases, skipped: 0, violation: None }
    }

    pub fn fail(name: impl Into<String>, cases: usize, v: Violation) -> Self {
        Check { name: name.into(), passed: false, cases, skipped: 0, violation: Some(v) }
    }
}

/// Collects checks; stops at the first witness inside each family.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.checks.iter().find_map(|c| c.violation.as_ref())
    }
}

/// Incremental evaluator for one identity family.
pub struct CheckBuilder {
    name: String,
    cases: usize,
    skipped: usize,
    violation: Option<Violation>,
}

impl CheckBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CheckBuilder { name: name.into(), cases: 0, skipped: 0, violation: None }
    }

    pub fn failed(&self) -> bool {
        self.violation.is_some()
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    /// Records one instance; keeps the first failure only.
    pub fn record<T: PartialEq + fmt::Debug>(&mut self, witness: impl FnOnce() -> Vec<String>, lhs: &T, rhs: &T) {
        self.cases += 1;
        if self.violation.is_none() && lhs != rhs {
            self.violation = Some(Violation {
                check: self.name.clone(),
                witness: witness(),
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            });
        }
    }

    pub fn record_bool(&mut self, witness: impl FnOnce() -> Vec<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if self.violation.is_none() && !ok {
            self.violation = Some(Violation {
                check: self.name.clone(),
                witness: witness(),
                lhs: detail(),
                rhs: "expected to hold".into(),
            });
        }
    }

    pub fn finish(self) -> Check {
        Check {
            passed: self.violation.is_none(),
            name: self.name,
            cases: self.cases,
            skipped: self.skipped,
            violation: self.violation,
        }
    }
}
