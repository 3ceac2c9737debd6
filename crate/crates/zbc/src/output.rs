//! Artifact encoding: JSON with 12 significant digits and the boundary CSV.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `x` rounded to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

/// Rounds every floating-point number in `v`. Non-finite values become
/// `null`.
pub fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            *v = Number::from_f64(round_sig(x, SIGNIFICANT_DIGITS))
                .map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(fields) => fields.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn json_value<T: Serialize>(x: &T) -> CliResult<Value> {
    let mut v = serde_json::to_value(x)?;
    round_value(&mut v);
    Ok(v)
}

/// A JSON report: `config` first, then the fields of `body` in order.
pub fn json_report(config: &RunConfig, body: Map<String, Value>) -> CliResult<String> {
    let mut top = Map::new();
    top.insert("config".into(), serde_json::to_value(config)?);
    top.extend(body);
    let mut v = Value::Object(top);
    round_value(&mut v);
    let mut text = serde_json::to_string_pretty(&v)?;
    text.push('\n');
    Ok(text)
}

fn csv_number(x: f64) -> String {
    round_sig(x, SIGNIFICANT_DIGITS).to_string()
}

/// CSV with `header` and numeric `rows`, followed by one `# {...}` line
/// holding the run configuration.
pub fn csv_report(config: &RunConfig, header: &[String], rows: &[Vec<f64>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| csv_number(x)))?;
    }
    let mut text = String::from_utf8(
        w.into_inner()
            .map_err(|e| csv::Error::from(e.into_error()))?,
    )
    .expect("CSV output is ASCII");
    let mut cfg = serde_json::to_value(config)?;
    round_value(&mut cfg);
    text.push_str("# ");
    text.push_str(&serde_json::to_string(&cfg)?);
    text.push('\n');
    Ok(text)
}

/// Writes `text` to `out`, or to standard output.
pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
