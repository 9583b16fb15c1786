//! JSON and CSV output.
//!
//! Reports are `serde_json::Value` trees; object keys are sorted by the
//! default map type, and floats are rounded to nine significant digits so
//! repeated runs print identical bytes.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{io, CliError};

/// Rounds to nine significant digits. Non-finite values become `null`.
pub fn sig9(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.8e}").parse().expect("formatted float parses");
    Value::from(r + 0.0)
}

/// Full-precision number, for values meant to be fed back in.
pub fn exact(x: f64) -> Value {
    if x.is_finite() {
        // `+ 0.0` turns -0 into 0.
        Value::from(x + 0.0)
    } else {
        Value::Null
    }
}

#[derive(Default)]
pub struct Report(Map<String, Value>);

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(mut self, key: &str, x: f64) -> Self {
        self.0.insert(key.into(), sig9(x));
        self
    }

    pub fn opt(self, key: &str, x: Option<f64>) -> Self {
        match x {
            Some(x) => self.num(key, x),
            None => self.value(key, Value::Null),
        }
    }

    pub fn value(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.insert(key.into(), v.into());
        self
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serialises");
    s.push('\n');
    s
}

/// Writes `v` to `path`, or to stdout when `path` is `None`.
pub fn emit(v: &Value, path: Option<&Path>) -> Result<(), CliError> {
    let text = to_text(v);
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Other(e.to_string()))
        }
    }
}

/// Writes a CSV with a header row and one row per index.
pub fn write_columns(path: &Path, header: &[&str], columns: &[&[f64]]) -> Result<(), CliError> {
    let n = columns.first().map_or(0, |c| c.len());
    let mut s = header.join(",");
    s.push('\n');
    for i in 0..n {
        let row: Vec<String> = columns.iter().map(|c| format!("{:e}", c[i])).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    std::fs::write(path, s).map_err(|e| io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_digits() {
        assert_eq!(sig9(626.745_812_345_6), Value::from(626.745812));
        assert_eq!(sig9(1.0 / 3.0), Value::from(0.333333333));
        assert_eq!(sig9(f64::NAN), Value::Null);
        assert_eq!(sig9(0.0), Value::from(0.0));
    }

    #[test]
    fn keys_sorted() {
        let v = Report::new().num("b", 1.0).num("a", 2.0).into_value();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":2.0,"b":1.0}"#);
    }
}
