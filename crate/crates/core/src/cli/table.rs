use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

/// Provenance block attached to every result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Every parameter that can affect the result.
    pub config: Value,
    /// Index and sign conventions the values depend on.
    pub conventions: Vec<String>,
    pub timestamp: String,
}

/// Rows of `(index, value, ...)` plus summary scalars.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub metadata: Metadata,
    pub summary: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl ResultTable {
    pub fn new(command: &str, config: Value) -> Self {
        Self {
            metadata: Metadata {
                tool: "qms".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: command.into(),
                config,
                conventions: Vec::new(),
                timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            },
            summary: Map::new(),
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn columns(mut self, names: &[&str]) -> Self {
        self.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn convention(&mut self, text: &str) {
        self.metadata.conventions.push(text.into());
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(
            key.into(),
            serde_json::to_value(value).expect("summary values serialize"),
        );
    }

    pub fn row(&mut self, values: Vec<Value>) {
        self.rows.push(values);
    }

    pub fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    /// Metadata and summary as `#` comment lines, then a header and one
    /// record per row. Records may differ in length.
    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "# {}", serde_json::to_string(&self.metadata)?)?;
        for (k, v) in &self.summary {
            writeln!(out, "# {k} = {v}")?;
        }
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        if !self.columns.is_empty() {
            w.write_record(&self.columns)?;
        }
        for row in &self.rows {
            w.write_record(row.iter().map(cell))?;
        }
        w.flush()
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// `{"re": .., "im": ..}`.
pub fn complex(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// JSON number for finite values, `null` otherwise.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}
