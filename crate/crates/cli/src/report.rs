//! Report records and their line-delimited and tabular renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::{Suite, SuiteConfig};

/// One check: `residual` is `"0"` exactly when the identity holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: Suite,
    pub instance: String,
    pub check: String,
    pub residual: String,
}

impl Record {
    pub fn new(suite: Suite, instance: impl Into<String>, check: impl Into<String>, residual: impl Into<String>) -> Record {
        Record {
            suite,
            instance: instance.into(),
            check: check.into(),
            residual: residual.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.residual == "0"
    }
}

#[derive(Serialize)]
struct Header<'a> {
    suite: Suite,
    identity: &'static str,
    config: &'a SuiteConfig,
}

/// Records of one suite run, in a fixed order.
#[derive(Clone, Debug)]
pub struct Report {
    pub config: SuiteConfig,
    pub records: Vec<Record>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }

    /// A JSON header line followed by one JSON object per record.
    pub fn to_lines(&self) -> String {
        let header = Header {
            suite: self.config.suite,
            identity: self.config.suite.identity(),
            config: &self.config,
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    /// An aligned table; long residuals are cut at `RESIDUAL_WIDTH` chars.
    pub fn to_table(&self) -> String {
        const RESIDUAL_WIDTH: usize = 60;
        let mut out = String::new();
        let _ = writeln!(out, "# {}: {}", self.config.suite, self.config.suite.identity());
        let _ = writeln!(out, "# {}", self.config.params);
        let wi = self.records.iter().map(|r| r.instance.chars().count()).max().unwrap_or(0).max(8);
        let wc = self.records.iter().map(|r| r.check.chars().count()).max().unwrap_or(0).max(5);
        let _ = writeln!(out, "{:<wi$}  {:<wc$}  {:<6}  residual", "instance", "check", "status");
        for r in &self.records {
            let status = if r.passed() { "ok" } else { "FAIL" };
            let flat = r.residual.replace('\n', "; ");
            let shown: String = if flat.chars().count() > RESIDUAL_WIDTH {
                flat.chars().take(RESIDUAL_WIDTH).chain("...".chars()).collect()
            } else {
                flat
            };
            let _ = writeln!(out, "{:<wi$}  {:<wc$}  {:<6}  {}", r.instance, r.check, status, shown);
        }
        let _ = writeln!(out, "# {} checks, {} failed", self.records.len(), self.failures());
        out
    }

    /// One-line summary for standard error.
    pub fn summary(&self, elapsed: std::time::Duration) -> String {
        format!(
            "{}: {} checks, {} failed, {:.2}s",
            self.config.suite,
            self.records.len(),
            self.failures(),
            elapsed.as_secs_f64()
        )
    }
}
