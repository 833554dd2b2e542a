//! Plain-text and CSV renderings.

use serde_json::Value;
use statesurf::BatchRow;

use crate::CliError;

/// `path: value` lines; arrays of scalars are joined on one line.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, String::new(), &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        _ => None,
    }
}

fn walk(v: &Value, path: String, out: &mut String) {
    let line = |out: &mut String, s: String| {
        out.push_str(if path.is_empty() { "value" } else { &path });
        out.push_str(": ");
        out.push_str(&s);
        out.push('\n');
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(x, p, out);
            }
        }
        Value::Array(items) => {
            let flat: Option<Vec<String>> = items.iter().map(scalar).collect();
            match flat {
                Some(xs) => line(out, format!("[{}]", xs.join(", "))),
                None if items.iter().all(|x| x.is_array()) => {
                    let rows: Vec<String> = items.iter().map(compact).collect();
                    line(out, rows.join(" "))
                }
                None => {
                    for (i, x) in items.iter().enumerate() {
                        walk(x, format!("{path}[{i}]"), out);
                    }
                }
            }
        }
        _ => line(out, scalar(v).unwrap()),
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

/// Columns: name, adequate, homogeneous, beta_prime, chi, orientable,
/// geometric_type, error. Missing values are empty fields.
pub fn csv(rows: &[BatchRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}
