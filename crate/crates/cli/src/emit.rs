//! Report serialisation. Every float is rounded to 15 significant digits so
//! outputs are stable across platforms and runs.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// `%.15g`-style text: fixed notation for exponents in [−5, 15), scientific otherwise.
pub fn fmt_g15(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let r = round15(x);
    let exp = r.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Converts to JSON with every number rounded; non-finite floats become null.
pub fn to_json_value<T: Serialize>(report: &T) -> Result<Value, CliError> {
    let v = serde_json::to_value(report).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(round_numbers(v))
}

fn round_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round15(x)).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_numbers).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_numbers(v))).collect()),
        other => other,
    }
}

pub fn json_text<T: Serialize>(report: &T) -> Result<String, CliError> {
    let v = to_json_value(report)?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// One CSV header plus one row per flattened object; nested keys join with '.'.
pub fn csv_text<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut header: Vec<String> = Vec::new();
    let mut lines = Vec::new();
    for row in rows {
        let mut cells = Vec::new();
        flatten("", &to_json_value(row)?, &mut cells);
        if header.is_empty() {
            header = cells.iter().map(|(k, _)| k.clone()).collect();
        }
        lines.push(cells.into_iter().map(|(_, v)| v).collect::<Vec<_>>().join(","));
    }
    let mut out = header.join(",");
    out.push('\n');
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    Ok(out)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::Number(n) => {
            let cell = match n.as_f64() {
                Some(x) if n.is_f64() => fmt_g15(x),
                _ => n.to_string(),
            };
            out.push((prefix.to_string(), cell));
        }
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
    }
}

/// Collects written files so the manifest can checksum them.
#[derive(Debug, Default)]
pub struct Emitter {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Emitter {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        Ok(Self { dir: dir.to_path_buf(), written: Vec::new() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        let mut f = fs::File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        f.write_all(contents.as_bytes())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.written.push(path.clone());
        Ok(path)
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        x: f64,
        inner: Inner,
        n: u64,
    }

    #[derive(Serialize)]
    struct Inner {
        a: f64,
    }

    #[test]
    fn fifteen_digits() {
        assert_eq!(fmt_g15(0.1 + 0.2), "0.3");
        assert_eq!(fmt_g15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_g15(1e-20), "1e-20");
        assert_eq!(fmt_g15(2.5e20), "2.5e20");
        assert_eq!(fmt_g15(-0.0), "0");
        assert_eq!(round15(2.0 / 3.0), 0.666666666666667);
    }

    #[test]
    fn csv_flattening_keeps_field_order() {
        let rows = [Row { x: 1.0 / 3.0, inner: Inner { a: 2.0 }, n: 7 }];
        let text = csv_text(&rows).unwrap();
        assert_eq!(text, "x,inner.a,n\n0.333333333333333,2,7\n");
    }

    #[test]
    fn json_rounds_and_nulls() {
        let v = to_json_value(&[f64::NAN, 1.0 / 3.0]).unwrap();
        assert_eq!(v.to_string(), "[null,0.333333333333333]");
    }
}
