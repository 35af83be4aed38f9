//! Reports and evaluation tables in JSON and CSV.

use std::fmt::Write as _;

use krein_core::factor::Check;
use krein_core::nevanlinna::ClosedSet;
use krein_core::{Complex64, ExtComplex};
use serde::Serialize;
use serde_json::{json, Value};

use crate::spec::{ArcSetDto, Num};

/// One certification with its measured residual and tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
}

impl CheckRow {
    /// `residual <= tol`.
    pub fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        CheckRow { name: name.into(), residual, tol, passed: residual <= tol }
    }

    /// A yes/no condition, recorded as residual `0` or `1` against `0`.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        CheckRow::new(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }
}

impl From<&Check> for CheckRow {
    fn from(c: &Check) -> Self {
        CheckRow { name: c.name.clone(), residual: c.residual, tol: c.tol, passed: c.passed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub task: Value,
    pub results: Value,
    pub checks: Vec<CheckRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, task: Value) -> Self {
        Report { command: command.into(), task, results: json!({}), checks: Vec::new(), error: None, timing_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn set(&mut self, key: &str, v: Value) {
        if let Value::Object(m) = &mut self.results {
            m.insert(key.into(), v);
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `name,residual,tol,passed` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,residual,tol,passed\n");
        for c in &self.checks {
            let _ = writeln!(s, "{},{},{},{}", csv_field(&c.name), fmt_f64(c.residual), fmt_f64(c.tol), c.passed);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "{},nan,nan,false", csv_field(e));
        }
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:?}")
    }
}

/// How a row of an evaluation table was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    /// `Im z > 0`.
    Interior,
    /// Real point off `σ(f)`, where `f` continues analytically.
    Real,
    /// Real point on `σ(f)`: the limit of `f(x + iε)` as `ε ↓ 0`.
    Boundary,
    /// `f` has a pole here; the value columns are sentinels.
    Pole,
    /// No value could be computed; the value columns are sentinels.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub x_or_re_z: f64,
    pub im_z: f64,
    pub re_f: Option<f64>,
    pub im_f: Option<f64>,
    pub flag: Flag,
}

impl Row {
    pub fn new(z: Complex64, v: Option<ExtComplex>, flag: Flag) -> Self {
        match v {
            Some(ExtComplex::Finite(v)) if v.re.is_finite() && v.im.is_finite() => Row { x_or_re_z: z.re, im_z: z.im, re_f: Some(v.re), im_f: Some(v.im), flag },
            Some(_) => Row { x_or_re_z: z.re, im_z: z.im, re_f: None, im_f: None, flag: Flag::Pole },
            None => Row { x_or_re_z: z.re, im_z: z.im, re_f: None, im_f: None, flag: Flag::Error },
        }
    }
}

pub const CSV_HEADER: &str = "x_or_re_z,im_z,re_f,im_f,flag";

/// Sentinels: `inf` for poles and `nan` for failures.
pub fn rows_to_csv(rows: &[Row]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let sentinel = if r.flag == Flag::Pole { "inf" } else { "nan" };
        let cell = |v: Option<f64>| v.map_or(sentinel.to_string(), fmt_f64);
        let flag = serde_json::to_value(r.flag).expect("flag serializes");
        let _ = writeln!(s, "{},{},{},{},{}", fmt_f64(r.x_or_re_z), fmt_f64(r.im_z), cell(r.re_f), cell(r.im_f), flag.as_str().unwrap_or(""));
    }
    s
}

pub fn closed_set_json(s: &ClosedSet) -> Value {
    let num = |x: f64| serde_json::to_value(if x.is_finite() { Num::Real(x) } else if x > 0.0 { Num::Tag(crate::spec::InfTag::Plus) } else { Num::Tag(crate::spec::InfTag::Minus) }).expect("number serializes");
    json!({
        "points": s.points,
        "intervals": s.intervals.iter().map(|&(l, r)| json!([num(l), num(r)])).collect::<Vec<_>>(),
        "infinity": s.infinity,
    })
}

pub fn arcset_json(set: &krein_core::ArcSet) -> Value {
    serde_json::to_value(ArcSetDto::from_set(set)).expect("arc set serializes")
}

pub fn point_json(p: krein_core::ExtPoint) -> Value {
    serde_json::to_value(Num::from_point(p)).expect("point serializes")
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_sentinels() {
        let rows = [
            Row::new(Complex64::new(0.0, 0.0), Some(ExtComplex::Finite(Complex64::new(0.0, 1.0))), Flag::Boundary),
            Row::new(Complex64::new(1.0, 0.0), Some(ExtComplex::Infinity), Flag::Real),
            Row::new(Complex64::new(2.0, 0.0), None, Flag::Real),
        ];
        assert_eq!(rows_to_csv(&rows), "x_or_re_z,im_z,re_f,im_f,flag\n0.0,0.0,0.0,1.0,boundary\n1.0,0.0,inf,inf,pole\n2.0,0.0,nan,nan,error\n");
    }

    #[test]
    fn report_pass_state() {
        let mut r = Report::new("solve", json!({}));
        r.checks.push(CheckRow::new("a", 1e-12, 1e-9));
        assert!(r.passed());
        r.checks.push(CheckRow::flag("b", false));
        assert!(!r.passed());
        assert!(r.to_csv().ends_with("b,1.0,0.0,false\n"));
    }
}
