//! Report model and its text, CSV and JSON renderings.
//!
//! Floats are always written with 17 significant digits in scientific
//! notation, so identical runs give byte-identical output.

use std::fmt::Write as _;

use serde_json::{json, Map, Number, Value};

use crate::config::RunConfig;
use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(i64::try_from(v).expect("integer cell out of range"))
            }
        }
    )*};
}
int_cell!(u32, u64, usize, i64);

/// `{:.16e}` (17 significant digits) with an explicitly signed exponent,
/// the form JSON numbers keep, so CSV and JSON carry identical text.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.into();
    }
    let s = format!("{v:.16e}");
    match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    }
}

fn float_value(v: f64) -> Value {
    if v.is_finite() {
        Value::Number(
            format_float(v)
                .parse::<Number>()
                .expect("formatted float is a JSON number"),
        )
    } else {
        Value::Null
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(f) => format_float(*f),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Float(f) => float_value(*f),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// A named pass/fail outcome; `detail` carries the counterexample on failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Scalar results that do not fit the row layout.
    pub summary: Vec<(&'static str, Cell)>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            ..Self::default()
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn render(&self, cfg: &RunConfig) -> Result<String, CliError> {
        match cfg.format {
            crate::config::Format::Text => Ok(self.to_text(cfg)),
            crate::config::Format::Csv => self.to_csv(),
            crate::config::Format::Json => self.to_json(cfg),
        }
    }

    /// Header plus one record per row.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn to_json(&self, cfg: &RunConfig) -> Result<String, CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| ((*c).to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let summary: Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| ((*k).to_string(), v.json()))
            .collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
            .collect();
        let doc = json!({
            "metadata": metadata(cfg),
            "columns": self.columns,
            "rows": rows,
            "summary": summary,
            "checks": checks,
            "status": if self.pass() { "pass" } else { "fail" },
        });
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_text(&self, cfg: &RunConfig) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "qpentagon {} ({})",
            cfg.command.name(),
            env!("CARGO_PKG_VERSION")
        );
        if !self.rows.is_empty() {
            let cells: Vec<Vec<String>> = self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::text).collect())
                .collect();
            let widths: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|r| r[i].len())
                        .max()
                        .unwrap_or(0)
                        .max(c.len())
                })
                .collect();
            let line = |fields: Vec<&str>| {
                fields
                    .iter()
                    .zip(&widths)
                    .map(|(f, w)| format!("{f:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(self.columns.clone()));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
            }
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k} = {}", v.text());
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(out, "status: {}", if self.pass() { "pass" } else { "fail" });
        out
    }
}

fn metadata(cfg: &RunConfig) -> Value {
    json!({
        "tool": "qpentagon",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cfg.command.name(),
        "config": {
            "q": float_value(cfg.q),
            "a": float_value(cfg.a),
            "z": float_value(cfg.z),
            "x": float_value(cfg.x),
            "degree": cfg.degree,
            "max_m": cfg.max_m,
            "max_n": cfg.max_n,
            "k_min": cfg.k_min,
            "k_max": cfg.k_max,
            "format": cfg.format.name(),
        },
        "tolerances": {
            "tol_rel": float_value(cfg.tol_rel),
            "tol_term": float_value(cfg.tol_term),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(-2.0), "-2.0000000000000000e+0");
        assert_eq!(format_float(6.02e23), "6.0200000000000000e+23");
        assert_eq!(format_float(f64::NAN), "nan");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
        for v in [0.1, 1.0 / 3.0, 6.02e23, -1e-300] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_numbers_keep_their_digits() {
        assert_eq!(float_value(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(float_value(-12.5).to_string(), "-1.2500000000000000e+1");
        assert_eq!(float_value(f64::INFINITY), Value::Null);
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::new(vec!["k", "value", "ok", "note"]);
        r.push_row(vec![3u32.into(), 0.5.into(), true.into(), "a, b".into()]);
        r.push_row(vec![4u32.into(), Cell::Empty, false.into(), "".into()]);
        assert_eq!(
            r.to_csv().unwrap(),
            "k,value,ok,note\n3,5.0000000000000000e-1,true,\"a, b\"\n4,,false,\n"
        );
    }

    #[test]
    fn status_follows_checks() {
        let mut r = Report::new(vec![]);
        assert!(r.pass());
        r.check("one", true, "");
        r.check("two", false, "x = 1");
        r.check("three", false, "x = 2");
        assert!(!r.pass());
        assert_eq!(r.first_failure().unwrap().detail, "x = 1");
    }
}
