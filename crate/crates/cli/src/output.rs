//! Output envelopes and text/CSV rendering.

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// An asserted check failed.
    Failed,
    BudgetExceeded,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::BudgetExceeded => "budget_exceeded",
        }
    }
}

pub fn envelope(command: &str, status: Status, result: Value, error: Option<String>) -> Value {
    let mut v = json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "status": status.as_str(),
        "result": result,
    });
    if let Some(e) = error {
        v["error"] = Value::String(e);
    }
    v
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "-".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

/// `(key, value)` rows from a JSON object, nested objects flattened with
/// dotted keys.
pub fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

pub fn render_table(headers: &[String], rows: &[Vec<String>], format: Format) -> anyhow::Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(headers)?;
            for r in rows {
                w.write_record(r)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        _ => {
            let widths: Vec<usize> = (0..headers.len())
                .map(|c| rows.iter().map(|r| r[c].len()).chain([headers[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            let mut out = line(headers);
            out.push('\n');
            for r in rows {
                out.push_str(&line(r));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Key/value rendering of any result for text and CSV output.
pub fn render_flat(result: &Value, format: Format) -> anyhow::Result<String> {
    let mut pairs = Vec::new();
    flatten("", result, &mut pairs);
    let rows: Vec<Vec<String>> = pairs.into_iter().map(|(k, v)| vec![k, v]).collect();
    render_table(&["key".into(), "value".into()], &rows, format)
}
