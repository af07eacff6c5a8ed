//! Deterministic JSON and CSV output.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64 as C;
use serde_json::{json, Map, Number, Value};
use sha2::{Digest, Sha256};

use crate::linalg::CMatrix;
use crate::Result;

/// A float at 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    text.parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

pub fn complex(z: C) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn params_hash(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes()).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// One suite outcome.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub error: Option<String>,
}

impl SuiteResult {
    pub fn pass(&self) -> bool {
        self.error.is_none() && self.max_residual.is_finite() && self.max_residual < self.tolerance
    }

    pub fn to_json(&self, hash: &str) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), Value::String(self.suite.clone()));
        m.insert("params_hash".into(), Value::String(hash.to_string()));
        m.insert("max_residual".into(), num(self.max_residual));
        m.insert("tolerance".into(), num(self.tolerance));
        m.insert("pass".into(), Value::Bool(self.pass()));
        if let Some(e) = &self.error {
            m.insert("error".into(), Value::String(e.clone()));
        }
        Value::Object(m)
    }
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| crate::Error::InvalidInput(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Complex matrix as CSV, each entry written as two columns `re,im`.
pub fn matrix_csv(m: &CMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> =
            (0..m.ncols()).map(|k| format!("{},{}", csv_float(m[(i, k)].re), csv_float(m[(i, k)].im))).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(num(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn hash_is_hex_sha256() {
        assert_eq!(params_hash("").len(), 64);
        assert!(params_hash("abc").starts_with("ba7816bf"));
    }
}
