//! Structured results of identity checks.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub group: String,
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    /// `"0"` when the identity holds, otherwise the residual in canonical form.
    pub residual: String,
    pub passed: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckEntry {
    pub fn new(group: &str, name: impl Into<String>) -> Self {
        CheckEntry {
            group: group.to_string(),
            name: name.into(),
            parameters: BTreeMap::new(),
            residual: String::new(),
            passed: false,
            wall_time: Duration::ZERO,
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Records a residual that passes iff it is zero.
    pub fn residual(mut self, is_zero: bool, rendered: impl FnOnce() -> String) -> Self {
        self.passed = is_zero;
        self.residual = if is_zero { "0".into() } else { rendered() };
        self
    }

    /// Records an outcome that is not a plain residual (e.g. a failure
    /// description for a negative control).
    pub fn outcome(mut self, passed: bool, detail: impl Into<String>) -> Self {
        self.passed = passed;
        self.residual = detail.into();
        self
    }

    pub fn since(mut self, start: Instant) -> Self {
        self.wall_time = start.elapsed();
        self
    }

    /// Unique key used for sorting and lookups.
    pub fn key(&self) -> String {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}/{}[{}]", self.group, self.name, params.join(","))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A set of check entries. Entries are kept sorted by key, so the content is
/// independent of the order in which checks finished.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        let key = entry.key();
        let pos = self.entries.partition_point(|e| e.key() < key);
        self.entries.insert(pos, entry);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for e in other.entries {
            self.push(e);
        }
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    /// First entry whose name equals `name`.
    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn summary(&self) -> Summary {
        let passed = self.entries.iter().filter(|e| e.passed).count();
        Summary { total: self.entries.len(), passed, failed: self.entries.len() - passed }
    }

    pub fn timings(&self) -> BTreeMap<String, f64> {
        self.entries.iter().map(|e| (e.key(), e.wall_time.as_secs_f64() * 1e3)).collect()
    }

    /// Human-readable table: one line per entry, grouped, residuals verbatim.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut group = None;
        for e in &self.entries {
            if group != Some(&e.group) {
                out.push_str(&format!("[{}]\n", e.group));
                group = Some(&e.group);
            }
            let params: Vec<String> = e.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let status = if e.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("  {status}  {}", e.name));
            if !params.is_empty() {
                out.push_str(&format!("  ({})", params.join(", ")));
            }
            if !e.passed || e.residual != "0" {
                out.push_str(&format!("\n        residual: {}", e.residual));
            }
            out.push('\n');
        }
        let s = self.summary();
        out.push_str(&format!("total {}  passed {}  failed {}\n", s.total, s.passed, s.failed));
        out
    }
}

impl FromIterator<CheckEntry> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = CheckEntry>>(iter: I) -> Self {
        let mut r = VerificationReport::new();
        for e in iter {
            r.push(e);
        }
        r
    }
}
