//! Report envelope shared by every command, rendered as JSON or CSV.

use std::io::Write;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{Map, Value};

/// Bumped whenever the envelope layout changes.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOLKIT: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exact rationals always travel as `"p/q"` strings.
pub fn rational(r: &BigRational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

/// A table of results plus scalar summary fields.
///
/// `passed` is set by commands that check something; a `false` there maps to
/// exit code 1.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    pub summary: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.into(),
            passed: None,
            summary: Map::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.into(), value.into());
        self
    }

    pub fn row(&mut self, values: Vec<Value>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }

    /// Combine with a check result; a single failure fails the report.
    pub fn require(&mut self, ok: bool) {
        self.passed = Some(self.passed.unwrap_or(true) && ok);
    }

    pub fn failed(&self) -> bool {
        self.passed == Some(false)
    }

    /// Rows whose `passed` column is false.
    pub fn failing_rows(&self) -> impl Iterator<Item = &Vec<Value>> {
        let col = self.columns.iter().position(|c| c == "passed");
        self.rows.iter().filter(move |row| col.is_some_and(|i| row[i] == Value::Bool(false)))
    }
}

#[derive(Serialize)]
struct Toolkit {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    toolkit: Toolkit,
    config: &'a Value,
    report: &'a Report,
}

pub fn write_json(out: &mut dyn Write, config: &Value, report: &Report) -> anyhow::Result<()> {
    let env = Envelope { schema_version: SCHEMA_VERSION, toolkit: Toolkit { name: TOOLKIT, version: VERSION }, config, report };
    serde_json::to_writer_pretty(&mut *out, &env)?;
    writeln!(out)?;
    Ok(())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Header plus one record per row; the summary is left to the JSON form.
pub fn write_csv(out: &mut dyn Write, report: &Report) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&report.columns)?;
    for row in &report.rows {
        w.write_record(row.iter().map(cell))?;
    }
    w.flush()?;
    Ok(())
}
