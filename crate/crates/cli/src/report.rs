//! Reports: named pass/fail checks plus tables, written as JSON and CSV.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

/// How a check compares its value with the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Comparison {
    /// Pass when `value < threshold`.
    #[serde(rename = "<")]
    Below,
    /// Pass when `value <= threshold`.
    #[serde(rename = "<=")]
    AtMost,
    /// Pass when `value > threshold`.
    #[serde(rename = ">")]
    Above,
    /// Pass when `value >= threshold`.
    #[serde(rename = ">=")]
    AtLeast,
    /// Informational; always passes.
    #[serde(rename = "info")]
    Info,
}

/// One named comparison of a measured value with a threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    /// Name of the relation or statistic.
    pub name: String,
    /// Measured value.
    pub value: f64,
    /// Threshold applied.
    pub threshold: f64,
    /// Comparison used.
    pub comparison: Comparison,
    /// Outcome.
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, value: f64, threshold: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::Below => value < threshold,
            Comparison::AtMost => value <= threshold,
            Comparison::Above => value > threshold,
            Comparison::AtLeast => value >= threshold,
            Comparison::Info => true,
        };
        Self {
            name: name.into(),
            value,
            threshold,
            comparison,
            passed,
        }
    }

    /// Passes when `value < threshold`.
    pub fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, Comparison::Below)
    }

    /// Passes when `value <= threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, Comparison::AtMost)
    }

    /// Passes when `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, Comparison::Above)
    }

    /// Passes when `value >= threshold`.
    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(name, value, threshold, Comparison::AtLeast)
    }

    /// A recorded value without a pass/fail decision.
    pub fn info(name: impl Into<String>, value: f64) -> Self {
        Self::new(name, value, f64::NAN, Comparison::Info)
    }

    /// A boolean outcome recorded as `1` (true) or `0`.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { 1.0 } else { 0.0 }, 0.0, Comparison::Above)
    }
}

/// A CSV table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    /// File stem.
    pub name: String,
    /// Column names.
    pub header: Vec<String>,
    /// Rows, already formatted.
    #[serde(skip)]
    pub rows: Vec<Vec<String>>,
}

impl Table {
    /// Empty table with the given columns.
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row.
    pub fn push<I: IntoIterator<Item = String>>(&mut self, row: I) {
        self.rows.push(row.into_iter().collect());
    }
}

/// Everything a command produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    /// Subcommand name.
    pub command: String,
    /// Master seed.
    pub seed: u64,
    /// Fully resolved configuration, including the seed.
    pub config: serde_json::Value,
    /// Whether every check passed.
    pub passed: bool,
    /// Checks in the order they were made.
    pub checks: Vec<Check>,
    /// Tables written next to the report.
    pub tables: Vec<Table>,
}

impl Report {
    /// Empty report for `command`.
    pub fn new<C: Serialize>(command: &str, seed: u64, config: &C) -> Self {
        Self {
            command: command.into(),
            seed,
            config: serde_json::to_value(config).expect("configs serialize"),
            passed: true,
            checks: Vec::new(),
            tables: Vec::new(),
        }
    }

    /// Records a check.
    pub fn check(&mut self, c: Check) {
        self.passed &= c.passed;
        self.checks.push(c);
    }

    /// Records a table.
    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    /// Checks that failed.
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Looks up a check by name.
    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Writes `<command>.json`, `<command>_checks.csv` and one CSV per table into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut checks = csv::Writer::from_path(dir.join(format!("{}_checks.csv", self.command)))?;
        checks.write_record(["name", "value", "threshold", "comparison", "passed"])?;
        for c in &self.checks {
            let cmp = serde_json::to_value(c.comparison).expect("serializes");
            checks.write_record([
                c.name.clone(),
                fmt(c.value),
                fmt(c.threshold),
                cmp.as_str().unwrap_or_default().to_string(),
                c.passed.to_string(),
            ])?;
        }
        checks.flush()?;
        for t in &self.tables {
            let mut w =
                csv::Writer::from_path(dir.join(format!("{}_{}.csv", self.command, t.name)))?;
            w.write_record(&t.header)?;
            for r in &t.rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        let json = serde_json::to_string_pretty(self).expect("report serializes");
        fs::write(dir.join(format!("{}.json", self.command)), json + "\n")?;
        Ok(())
    }
}

/// Round-trip formatting of a float for CSV output.
pub fn fmt(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:e}")
    }
}
