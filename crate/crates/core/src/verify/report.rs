//! Report rows and their JSON, CSV and text renderings.

use serde::Serialize;

use super::SuiteName;
use super::format_value;
use crate::identities::{IdentityCheck, ParamPoint};
use crate::Complex;

/// A complex number as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for ComplexValue {
    fn from(z: Complex) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// One check at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub suite: SuiteName,
    pub identity: String,
    pub params: String,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub runtime_ms: f64,
    pub error: Option<String>,
}

impl ReportRow {
    pub(super) fn from_identity(suite: SuiteName, c: IdentityCheck) -> Self {
        Self {
            suite,
            identity: c.id.name().to_string(),
            params: c.params.to_string(),
            lhs: c.lhs.into(),
            rhs: c.rhs.into(),
            abs_err: c.abs_err,
            rel_err: c.rel_err,
            tol: c.tol,
            pass: c.pass,
            lhs_terms: c.lhs_terms,
            rhs_terms: c.rhs_terms,
            runtime_ms: 0.0,
            error: c.error,
        }
    }

    pub(super) fn failed(suite: SuiteName, name: &str, p: &ParamPoint, tol: f64, error: String) -> Self {
        let nan = ComplexValue { re: f64::NAN, im: f64::NAN };
        Self {
            suite,
            identity: name.to_string(),
            params: p.to_string(),
            lhs: nan,
            rhs: nan,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tol,
            pass: false,
            lhs_terms: 0,
            rhs_terms: 0,
            runtime_ms: 0.0,
            error: Some(error),
        }
    }

    fn status(&self) -> &'static str {
        match (self.pass, &self.error) {
            (true, _) => "PASS",
            (false, None) => "FAIL",
            (false, Some(_)) => "ERROR",
        }
    }
}

/// Row tallies. `fail` counts rows that evaluated but missed the tolerance;
/// `error` counts rows where an evaluation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

/// Outcome of one suite run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub started_at: String,
    pub suite: SuiteName,
    pub tol_override: Option<f64>,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    identity: &'a str,
    params: &'a str,
    lhs_re: f64,
    lhs_im: f64,
    rhs_re: f64,
    rhs_im: f64,
    abs_err: f64,
    rel_err: f64,
    tol: f64,
    pass: bool,
    lhs_terms: usize,
    rhs_terms: usize,
    runtime_ms: f64,
    error: &'a str,
}

impl Report {
    /// Sorts the rows by (suite, identity, params) and tallies them.
    pub fn new(suite: SuiteName, tol_override: Option<f64>, started_at: String, mut rows: Vec<ReportRow>) -> Self {
        rows.sort_by(|a, b| (a.suite, &a.identity, &a.params).cmp(&(b.suite, &b.identity, &b.params)));
        let mut summary = Summary { total: rows.len(), ..Summary::default() };
        for r in &rows {
            match r.status() {
                "PASS" => summary.pass += 1,
                "FAIL" => summary.fail += 1,
                _ => summary.error += 1,
            }
        }
        Self { tool_version: env!("CARGO_PKG_VERSION").to_string(), started_at, suite, tol_override, rows, summary }
    }

    /// True when nothing failed or errored.
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    /// Pretty-printed JSON. Non-finite numbers become `null`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON with the timestamp and runtimes removed: equal for equal inputs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        strip_volatile(&mut v);
        serde_json::to_string_pretty(&v).expect("value serialises")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(CsvRow {
                suite: r.suite.name(),
                identity: &r.identity,
                params: &r.params,
                lhs_re: r.lhs.re,
                lhs_im: r.lhs.im,
                rhs_re: r.rhs.re,
                rhs_im: r.rhs.im,
                abs_err: r.abs_err,
                rel_err: r.rel_err,
                tol: r.tol,
                pass: r.pass,
                lhs_terms: r.lhs_terms,
                rhs_terms: r.rhs_terms,
                runtime_ms: r.runtime_ms,
                error: r.error.as_deref().unwrap_or(""),
            })
            .expect("csv row serialises");
        }
        String::from_utf8(w.into_inner().expect("csv flushes")).expect("csv is utf-8")
    }

    /// One line per row, then the tallies.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let detail = match &r.error {
                Some(e) => e.clone(),
                None => format!(
                    "rel_err={:.2e} tol={:.0e} lhs={}",
                    r.rel_err,
                    r.tol,
                    format_value(Complex::new(r.lhs.re, r.lhs.im))
                ),
            };
            out.push_str(&format!("{:<5} {:<14} {:<21} {:<32} {detail}\n", r.status(), r.suite.name(), r.identity, r.params));
        }
        let s = self.summary;
        out.push_str(&format!("{} checks: {} passed, {} failed, {} errors\n", s.total, s.pass, s.fail, s.error));
        out
    }
}

/// Removes `started_at` and every `runtime_ms` from a serialised report.
pub fn strip_volatile(v: &mut serde_json::Value) {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("started_at");
        if let Some(rows) = obj.get_mut("rows").and_then(|r| r.as_array_mut()) {
            for row in rows {
                if let Some(o) = row.as_object_mut() {
                    o.remove("runtime_ms");
                }
            }
        }
    }
}
