//! Verification reports emitted by the command-line tool.
//!
//! JSON output is canonical: object keys are sorted and every float is
//! rounded to 15 significant digits before printing, so parsing a report and
//! printing it again reproduces the same bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Number {
    #[serde(deserialize_with = "nan_if_null")]
    pub re: f64,
    #[serde(deserialize_with = "nan_if_null")]
    pub im: f64,
}

/// JSON has no non-finite numbers; they are written as `null`.
fn nan_if_null<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl From<Complex64> for Number {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<f64> for Number {
    fn from(x: f64) -> Self {
        Self { re: x, im: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub value: Number,
    pub oracle: Option<Number>,
    pub discrepancy: Option<f64>,
    pub tolerance: Option<f64>,
    /// Whether the row takes part in the pass/fail verdict.
    pub checked: bool,
    pub pass: bool,
}

impl Row {
    /// An informational value with nothing to compare against.
    pub fn info(label: impl Into<String>, value: impl Into<Number>) -> Self {
        Self {
            label: label.into(),
            value: value.into(),
            oracle: None,
            discrepancy: None,
            tolerance: None,
            checked: false,
            pass: true,
        }
    }

    /// A checked row; a NaN discrepancy fails.
    pub fn check(
        label: impl Into<String>,
        value: impl Into<Number>,
        oracle: Option<Number>,
        discrepancy: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            label: label.into(),
            value: value.into(),
            oracle,
            discrepancy: Some(discrepancy),
            tolerance: Some(tolerance),
            checked: true,
            pass: discrepancy <= tolerance,
        }
    }

    /// A value compared against an oracle value by relative error.
    pub fn compare(label: impl Into<String>, value: Complex64, oracle: Complex64, tolerance: f64) -> Self {
        let disc = crate::recon::rel_err(value, oracle);
        Self::check(label, value, Some(oracle.into()), disc, tolerance)
    }

    /// A boolean predicate: value 1 or 0, expected 1.
    pub fn flag(label: impl Into<String>, holds: bool) -> Self {
        let v = if holds { 1.0 } else { 0.0 };
        Self::check(label, v, Some(1.0.into()), 1.0 - v, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub rows: Vec<Row>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            inputs: BTreeMap::new(),
            rows: Vec::new(),
            pass: true,
            runtime_ms: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.inputs.insert(key.to_string(), v);
    }

    pub fn push(&mut self, row: Row) {
        if row.checked && !row.pass {
            self.pass = false;
        }
        self.rows.push(row);
    }

    /// Appends another report's rows under a label prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut row in other.rows {
            row.label = format!("{prefix}{}", row.label);
            self.push(row);
        }
        self.pass &= other.pass;
    }

    /// Recomputes `pass` from the checked rows.
    pub fn verdict(&self) -> bool {
        self.rows.iter().filter(|r| r.checked).all(|r| r.pass)
    }

    pub fn failed_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.checked && !r.pass)
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        canonical_json(&v)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed report: {e}")))
    }

    /// Plot-ready CSV, one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,re,im,oracle_re,oracle_im,disc,tol,checked,pass\n");
        let num = |x: Option<f64>| x.map(fmt_g15).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "\"{}\",{},{},{},{},{},{},{},{}",
                r.label.replace('"', "\"\""),
                fmt_g15(r.value.re),
                fmt_g15(r.value.im),
                num(r.oracle.map(|o| o.re)),
                num(r.oracle.map(|o| o.im)),
                num(r.discrepancy),
                num(r.tolerance),
                r.checked,
                r.pass
            );
        }
        out
    }
}

/// `%.15g`-style rendering; non-finite values print as `nan`, `inf`, `-inf`.
pub fn fmt_g15(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..15).contains(&exp) {
        return round15(x).to_string();
    }
    let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

/// Rounds to 15 significant decimal digits.
fn round15(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

fn round_floats(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().expect("f64 number"));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.iter().map(round_floats).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), round_floats(v))).collect()),
        other => other.clone(),
    }
}

/// Pretty JSON with sorted keys and 15-digit floats.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_floats(v)).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.input("terms", 1000);
        r.input("alpha", 0.1 + 0.2);
        r.push(Row::info("count", 3.0));
        r.push(Row::compare("g", Complex64::new(1.0 / 3.0, -2.0), Complex64::new(1.0 / 3.0, -2.0 + 1e-12), 1e-9));
        r.push(Row::check("inf", f64::INFINITY, None, f64::NAN, 1.0));
        r
    }

    #[test]
    fn verdict_follows_checked_rows() {
        let mut r = sample();
        assert!(!r.pass, "NaN discrepancy must fail");
        assert_eq!(r.failed_rows().count(), 1);
        r.rows.pop();
        assert!(r.verdict());
        let mut ok = Report::new("x");
        ok.push(Row::flag("yes", true));
        ok.push(Row::info("ignored", f64::NAN));
        assert!(ok.pass && ok.verdict());
        ok.push(Row::flag("no", false));
        assert!(!ok.pass);
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let text = sample().to_json();
        assert!(text.contains("0.3,") || text.contains("0.3\n"), "{text}");
        let again = Report::from_json(&text).unwrap().to_json();
        assert_eq!(text, again);
        // keys come out sorted
        let command = text.find("\"command\"").unwrap();
        let rows = text.find("\"rows\"").unwrap();
        assert!(command < rows);
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("label,re,im,oracle_re,oracle_im,disc"));
        assert_eq!(lines.next().unwrap(), "\"count\",3,0,,,,,false,true");
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn g15() {
        assert_eq!(fmt_g15(0.1 + 0.2), "0.3");
        assert_eq!(fmt_g15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(fmt_g15(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_g15(4.923879524013049e-15), "4.92387952401305e-15");
        assert_eq!(fmt_g15(1e300), "1e+300");
        assert_eq!(fmt_g15(123456.0), "123456");
    }
}
