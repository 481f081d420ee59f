//! CSV tables and the JSON run summary.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;

pub const ALGEBRA_HEADER: &[&str] = &["identity", "dim", "instances", "max_residual", "tolerance", "counted", "passed"];
pub const HALFSPACE_HEADER: &[&str] = &["medium", "dim", "theta", "xi_norm", "rel_diff", "in_regime"];
pub const DISK_HEADER: &[&str] = &["metric", "sweep", "h", "theta", "error", "worst_xi", "in_regime"];
pub const EIKONAL_HEADER: &[&str] = &["theta", "xi", "branch", "order", "x1", "ratio", "log2_ratio", "delta", "passed"];
pub const SYMBOL_HEADER: &[&str] = &["theta", "h", "s", "xi", "matrix", "row", "col", "re", "im"];

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    #[serde(skip)]
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|s| s.to_string()).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// One pass/fail line.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub limit: f64,
    pub detail: String,
    /// Informational checks are reported but do not decide the exit status.
    pub counted: bool,
}

impl Check {
    pub fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Self { name: name.into(), passed: value <= limit, value, limit, detail: String::new(), counted: true }
    }

    pub fn at_least(name: &str, value: f64, limit: f64) -> Self {
        Self { name: name.into(), passed: value >= limit, value, limit, detail: String::new(), counted: true }
    }

    pub fn within(name: &str, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            name: name.into(),
            passed: (lo..=hi).contains(&value),
            value,
            limit: hi,
            detail: format!("range [{lo}, {hi}]"),
            counted: true,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        let d = detail.into();
        self.detail = if self.detail.is_empty() { d } else { format!("{}; {d}", self.detail) };
        self
    }

    pub fn informational(mut self) -> Self {
        self.counted = false;
        self
    }

    pub fn line(&self) -> String {
        let tag = match (self.passed, self.counted) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "NOTE",
        };
        let mut s = format!("{tag} {}: {:.3e} (limit {:.3e})", self.name, self.value, self.limit);
        if !self.detail.is_empty() {
            s.push_str(&format!(" [{}]", self.detail));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub experiment: String,
    pub library_version: String,
    pub seed: u64,
    pub config_hash: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(experiment: &str, seed: u64, config_hash: String) -> Self {
        Self {
            experiment: experiment.into(),
            library_version: crate::VERSION.into(),
            seed,
            config_hash,
            passed: true,
            checks: Vec::new(),
            notes: Vec::new(),
            tables: Vec::new(),
        }
    }

    pub fn check(&mut self, c: Check) {
        if c.counted && !c.passed {
            self.passed = false;
        }
        self.checks.push(c);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn summary_lines(&self) -> Vec<String> {
        self.checks.iter().map(Check::line).collect()
    }

    /// Writes `<table>.csv` for each table and `summary.json`; returns the paths.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut out = Vec::new();
        for t in &self.tables {
            let p = dir.join(format!("{}.csv", t.name));
            t.write_csv(&p)?;
            out.push(p);
        }
        let p = dir.join("summary.json");
        std::fs::write(&p, serde_json::to_string_pretty(self)?)?;
        out.push(p);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn informational_checks_do_not_fail_runs() {
        let mut r = Report::new("x", 1, "abc".into());
        r.check(Check::at_most("a", 2.0, 1.0).informational());
        assert!(r.passed);
        assert!(r.summary_lines()[0].starts_with("NOTE a"));
        r.check(Check::within("b", 2.0, 0.9, 1.5));
        assert!(!r.passed);
        assert!(r.summary_lines()[1].starts_with("FAIL b"));
    }
}
