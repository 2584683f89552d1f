//! Machine-readable reports and their human rendering.
//!
//! The JSON form is canonical: maps are ordered, floats are printed by
//! `serde_json`'s shortest round-trip formatter, and nothing depends on time,
//! paths or thread scheduling, so identical inputs give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nccover::linalg::CMat;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::scenario::{Kind, FORMAT_VERSION};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
}

/// A main-path quantity next to its brute-force oracle value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub quantity: String,
    /// Absent for comparisons of non-scalar quantities, which report only a distance.
    pub main: Option<f64>,
    pub oracle: Option<f64>,
    pub difference: f64,
    pub agrees: bool,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub kind: Kind,
    pub tolerance: f64,
    pub verdict: bool,
    pub checks: Vec<Check>,
    pub dimensions: BTreeMap<String, usize>,
    pub rank_data: BTreeMap<String, Vec<i64>>,
    pub values: BTreeMap<String, f64>,
    /// Small matrices as row-major `[re, im]` pairs.
    pub matrices: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
    pub oracle: Vec<OracleComparison>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub scenario: Value,
}

impl Report {
    pub fn new(kind: Kind, tolerance: f64, scenario: Value) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            kind,
            tolerance,
            verdict: true,
            checks: Vec::new(),
            dimensions: BTreeMap::new(),
            rank_data: BTreeMap::new(),
            values: BTreeMap::new(),
            matrices: BTreeMap::new(),
            oracle: Vec::new(),
            notes: Vec::new(),
            warnings: Vec::new(),
            scenario,
        }
    }

    /// Records a residual check against `tolerance`; a failed check makes the
    /// verdict false.
    pub fn check(&mut self, name: &str, residual: f64, tolerance: f64) -> bool {
        let passed = residual.is_finite() && residual <= tolerance;
        self.push_check(name, passed, residual, tolerance);
        passed
    }

    /// Records an exact (integer or boolean) check; residual is 0 or 1.
    pub fn exact(&mut self, name: &str, passed: bool) -> bool {
        self.push_check(name, passed, if passed { 0.0 } else { 1.0 }, 0.0);
        passed
    }

    /// Records an exact equality of two counts; residual is their difference.
    pub fn equal(&mut self, name: &str, a: usize, b: usize) -> bool {
        let passed = a == b;
        self.push_check(name, passed, a.abs_diff(b) as f64, 0.0);
        passed
    }

    fn push_check(&mut self, name: &str, passed: bool, residual: f64, tolerance: f64) {
        self.verdict &= passed;
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            residual: clean(residual),
            tolerance,
        });
    }

    pub fn dimension(&mut self, name: &str, d: usize) {
        self.dimensions.insert(name.to_string(), d);
    }

    pub fn value(&mut self, name: &str, v: f64) {
        self.values.insert(name.to_string(), clean(v));
    }

    pub fn matrix(&mut self, name: &str, m: &CMat) {
        let rows = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| [clean(m[(i, j)].re), clean(m[(i, j)].im)]).collect())
            .collect();
        self.matrices.insert(name.to_string(), rows);
    }

    /// Records an oracle comparison; disagreement makes the verdict false.
    pub fn compare(&mut self, quantity: &str, main: f64, oracle: f64, tolerance: f64, method: &str) {
        let difference = (main - oracle).abs();
        let agrees = difference <= tolerance;
        self.verdict &= agrees;
        self.oracle.push(OracleComparison {
            quantity: quantity.to_string(),
            main: Some(clean(main)),
            oracle: Some(clean(oracle)),
            difference: clean(difference),
            agrees,
            method: method.to_string(),
        });
    }

    /// Records a comparison of non-scalar quantities by their distance.
    pub fn compare_distance(&mut self, quantity: &str, distance: f64, tolerance: f64, method: &str) {
        let agrees = distance <= tolerance;
        self.verdict &= agrees;
        self.oracle.push(OracleComparison {
            quantity: quantity.to_string(),
            main: None,
            oracle: None,
            difference: clean(distance),
            agrees,
            method: method.to_string(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn warn(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.warnings.contains(&text) {
            self.warnings.push(text);
        }
    }

    /// Exit status for this report: 0 on a true verdict, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports contain only finite numbers");
        s.push('\n');
        s
    }
}

/// Maps `-0.0` to `0.0` and non-finite values to a large sentinel so the JSON
/// stays valid and stable.
fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x.is_nan() || x.is_infinite() {
        f64::MAX
    } else {
        x
    }
}

/// Human-readable summary of a report.
pub fn render(report: &Report) -> String {
    let mut out = String::new();
    let verdict = if report.verdict { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{}: {verdict} (tolerance {:e})", report.kind, report.tolerance);
    if !report.checks.is_empty() {
        let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let _ = writeln!(out, "checks:");
        for c in &report.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(
                out,
                "  [{mark}] {:<width$}  residual {:.3e}  tolerance {:e}",
                c.name, c.residual, c.tolerance
            );
        }
    }
    if !report.dimensions.is_empty() {
        let dims: Vec<String> = report.dimensions.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "dimensions: {}", dims.join(", "));
    }
    for (k, v) in &report.rank_data {
        let _ = writeln!(out, "rank data {k}: {v:?}");
    }
    for (k, v) in &report.values {
        let _ = writeln!(out, "{k}: {v:.6e}");
    }
    for o in &report.oracle {
        let mark = if o.agrees { "agrees" } else { "DISAGREES" };
        match (o.main, o.oracle) {
            (Some(a), Some(b)) => {
                let _ = writeln!(out, "oracle {}: main {a} vs oracle {b} ({mark}; {})", o.quantity, o.method);
            }
            _ => {
                let _ = writeln!(out, "oracle {}: distance {:.3e} ({mark}; {})", o.quantity, o.difference, o.method);
            }
        }
    }
    for n in &report.notes {
        let _ = writeln!(out, "note: {n}");
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_checks_flip_the_verdict() {
        let mut r = Report::new(Kind::Cotensor, 1e-9, Value::Null);
        assert!(r.check("small", 1e-12, 1e-9));
        assert!(r.verdict);
        assert!(!r.check("large", 1e-3, 1e-9));
        assert!(!r.verdict);
        assert_eq!(r.exit_code(), 1);
        assert!(!Report::new(Kind::Borel, 1e-9, Value::Null).check("nan", f64::NAN, 1.0));
    }

    #[test]
    fn json_round_trips_and_renders() {
        let mut r = Report::new(Kind::KClass, 1e-9, Value::Null);
        r.equal("counts", 3, 3);
        r.dimension("module", 4);
        r.value("norm", -0.0);
        r.matrix("m", &CMat::identity(2, 2));
        r.compare("dimension", 4.0, 4.0, 0.0, "elimination");
        r.warn("w");
        r.warn("w");
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.warnings.len(), 1);
        assert!(!r.to_json().contains("-0.0"));
        let text = render(&r);
        assert!(text.starts_with("k-class: PASS"));
        assert!(text.contains("module=4"));
    }
}
