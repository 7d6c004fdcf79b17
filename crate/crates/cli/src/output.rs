use clap::ValueEnum;
use serde_json::{json, Value};

use crate::registry::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
}

/// Fixed 12 decimals with a `.` separator, independent of locale; `inf`,
/// `-inf` and `nan` for non-finite values. Negative zero prints as zero.
pub fn number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{:.12}", v);
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// JSON has no infinities, so non-finite values become strings.
fn json_number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(number(v))
    }
}

pub fn single(metric: &str, o: &Outcome, format: Format) -> String {
    match format {
        Format::Plain => format!("{}\n", number(o.value)),
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("metric".into(), json!(metric));
            obj.insert("value".into(), json_number(o.value));
            if let Some((lo, hi)) = o.bracket {
                obj.insert("bracket".into(), json!([lo, hi]));
            }
            obj.insert("params".into(), Value::Object(o.params.clone()));
            format!("{}\n", Value::Object(obj))
        }
    }
}

/// Row-major `n × n` values as a CSV matrix with a header row of input names,
/// or as JSON `{"metric", "names", "matrix"}`.
pub fn matrix(metric: &str, names: &[String], values: &[f64], format: Format) -> String {
    let n = names.len();
    match format {
        Format::Plain => {
            let mut out = String::from("name");
            for name in names {
                out.push(',');
                out.push_str(&csv_field(name));
            }
            out.push('\n');
            for (i, name) in names.iter().enumerate() {
                out.push_str(&csv_field(name));
                for v in &values[i * n..(i + 1) * n] {
                    out.push(',');
                    out.push_str(&number(*v));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Vec<Value>> = values
                .chunks(n)
                .map(|r| r.iter().map(|&v| json_number(v)).collect())
                .collect();
            format!("{}\n", json!({ "metric": metric, "names": names, "matrix": rows }))
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(number(2.0), "2.000000000000");
        assert_eq!(number(0.0), "0.000000000000");
        assert_eq!(number(-0.0), "0.000000000000");
        assert_eq!(number(-1e-17), "0.000000000000");
        assert_eq!(number(-0.5), "-0.500000000000");
        assert_eq!(number(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a.csv"), "a.csv");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
