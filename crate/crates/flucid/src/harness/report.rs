//! Check results, one line per property.

use std::fmt;

const KEPT_FAILURES: usize = 3;

pub struct PropertyReport {
    pub name: String,
    pub cases: usize,
    pub failure_count: usize,
    /// First few failure descriptions, for the report text.
    pub failures: Vec<String>,
    /// Informational remark printed alongside a passing property.
    pub note: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Runs `f` once per case index, collecting failure descriptions.
pub fn property(
    name: impl Into<String>,
    cases: usize,
    mut f: impl FnMut(usize) -> Result<(), String>,
) -> PropertyReport {
    let mut failures = Vec::new();
    let mut failure_count = 0;
    for i in 0..cases {
        if let Err(msg) = f(i) {
            failure_count += 1;
            if failures.len() < KEPT_FAILURES {
                failures.push(format!("case {i}: {msg}"));
            }
        }
    }
    PropertyReport {
        name: name.into(),
        cases,
        failure_count,
        failures,
        note: None,
    }
}

pub struct Report {
    pub title: String,
    pub properties: Vec<PropertyReport>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            properties: Vec::new(),
        }
    }

    pub fn push(&mut self, p: PropertyReport) {
        self.properties.push(p);
    }

    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed())
    }

    pub fn failed_count(&self) -> usize {
        self.properties.iter().filter(|p| !p.passed()).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}]", self.title)?;
        for p in &self.properties {
            if p.passed() {
                writeln!(f, "  ok   {} ({} cases)", p.name, p.cases)?;
            } else {
                writeln!(
                    f,
                    "  FAIL {} ({}/{} cases failed)",
                    p.name, p.failure_count, p.cases
                )?;
                for msg in &p.failures {
                    writeln!(f, "       {msg}")?;
                }
            }
            if let Some(note) = &p.note {
                writeln!(f, "       note: {note}")?;
            }
        }
        let failed = self.failed_count();
        if failed == 0 {
            writeln!(f, "  {} properties passed", self.properties.len())
        } else {
            writeln!(
                f,
                "  {failed} of {} properties FAILED",
                self.properties.len()
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_counted_and_truncated() {
        let p = property("always fails", 10, |i| Err(format!("boom {i}")));
        assert!(!p.passed());
        assert_eq!(p.failure_count, 10);
        assert_eq!(p.failures.len(), KEPT_FAILURES);
        let ok = property("fine", 5, |_| Ok(()));
        assert!(ok.passed());
        let mut r = Report::new("unit");
        r.push(ok);
        r.push(p);
        assert!(!r.passed());
        let text = r.to_string();
        assert!(text.contains("ok   fine (5 cases)"));
        assert!(text.contains("FAIL always fails (10/10 cases failed)"));
        assert!(text.contains("1 of 2 properties FAILED"));
    }
}
