//! Verdict objects: validators never panic on mathematical failure, they
//! return a list of named checks with pass/fail status and witness text.

use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn new() -> Verdict {
        Verdict::default()
    }

    pub fn record(&mut self, name: impl Into<String>, passed: bool, details: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, details: details.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn merge(&mut self, prefix: &str, other: Verdict) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{prefix}{}", c.name), ..c });
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.details.is_empty() {
                writeln!(f, "{tag}  {}", c.name)?;
            } else {
                writeln!(f, "{tag}  {}: {}", c.name, c.details)?;
            }
        }
        Ok(())
    }
}
