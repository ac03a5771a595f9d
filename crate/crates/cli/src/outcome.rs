//! Report, tables and summary produced by one run, and the error object.

use std::fmt;
use std::fs;
use std::path::Path;

use momentum_core::Error;
use serde_json::{json, Map, Value};

use crate::task::Outputs;

/// A CSV table; cells are already formatted.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Map<String, Value>,
    pub tables: Vec<Table>,
    pub summary: String,
}

/// Exit code 2 for bad input or an unmet precondition, 3 for an invariant breach.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { kind: "invalid-input", message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure { kind: "io", message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        if self.kind == "invariant-breach" {
            3
        } else {
            2
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message, "exit_code": self.exit_code() } })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::InvalidInput(_) => "invalid-input",
            Error::Precondition(_) | Error::ZeroPolynomial | Error::FlatBundle => "precondition",
            Error::Invariant(_) => "invariant-breach",
        };
        Failure { kind, message: e.to_string() }
    }
}

pub type RunResult<T> = std::result::Result<T, Failure>;

fn write_bytes(path: &Path, bytes: &[u8]) -> RunResult<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| Failure::io(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, bytes).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

pub fn json_bytes(v: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s.into_bytes()
}

pub fn table_bytes(t: &Table) -> RunResult<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::io(e.to_string());
    w.write_record(&t.header).map_err(csv_err)?;
    for row in &t.rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Failure::io(e.to_string()))
}

impl Outcome {
    pub fn write(&self, out: &Path, outputs: &Outputs) -> RunResult<()> {
        let mut report = self.report.clone();
        if !self.tables.is_empty() {
            let names = self.tables.iter().map(|t| Value::String(format!("{}/{}.csv", outputs.tables, t.name))).collect();
            report.insert("tables".into(), Value::Array(names));
        }
        write_bytes(&out.join(&outputs.report), &json_bytes(&Value::Object(report)))?;
        for t in &self.tables {
            write_bytes(&out.join(&outputs.tables).join(format!("{}.csv", t.name)), &table_bytes(t)?)?;
        }
        Ok(())
    }
}

/// Writes the error object where the report would have gone; best effort.
pub fn write_failure(out: &Path, outputs: &Outputs, f: &Failure) {
    let _ = write_bytes(&out.join(&outputs.report), &json_bytes(&f.to_json()));
}
