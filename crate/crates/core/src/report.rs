use std::fmt;

use serde::{Deserialize, Serialize};

/// One checked unit of a verification: a block, a column subset, a column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportItem {
    pub label: String,
    /// Balance constant observed for the item (points per cell, λ, ...), when it is constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

impl ReportItem {
    pub fn pass(label: impl Into<String>, count: Option<usize>) -> Self {
        Self {
            label: label.into(),
            count,
            problems: Vec::new(),
        }
    }

    pub fn fail(label: impl Into<String>, problems: Vec<String>) -> Self {
        Self {
            label: label.into(),
            count: None,
            problems,
        }
    }

    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Structured pass/fail outcome with per-item evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub items: Vec<ReportItem>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, item: ReportItem) {
        self.items.push(item);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(ReportItem::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| !i.passed())
    }

    pub fn item(&self, label: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.label == label)
    }

    /// Folds another report in, prefixing its item labels with its subject.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut item in other.items {
            item.label = format!("{}: {}", other.subject, item.label);
            self.items.push(item);
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        writeln!(
            f,
            "{}: {} ({} checks, {} failed)",
            self.subject,
            if failed == 0 { "PASS" } else { "FAIL" },
            self.items.len(),
            failed
        )?;
        for item in self.failures() {
            writeln!(f, "  {}:", item.label)?;
            for p in &item.problems {
                writeln!(f, "    - {p}")?;
            }
        }
        Ok(())
    }
}
