//! Structured results of identity checks and their JSON form.
//!
//! Report JSON: `{check, params:{...}, residual, tolerance, verdict,
//! counterexamples:[{params, residual}]}`. A suite is written as one JSON array.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Serialize, Serializer};

use crate::coin::CoinJson;
use crate::error::Result;
use crate::format::Sci;
use crate::linalg::{frobenius_unchecked, CMat, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
}

/// One side of a checked identity.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Value {
    Scalar(C64),
    Matrix(CMat),
}

impl Value {
    pub fn distance(&self, other: &Value) -> f64 {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => (a - b).norm(),
            (Value::Matrix(a), Value::Matrix(b)) => {
                assert_eq!(a.dim(), b.dim(), "report sides differ in dimension");
                frobenius_unchecked(a, b)
            }
            _ => panic!("report sides mix scalar and matrix values"),
        }
    }

    pub fn as_matrix(&self) -> Option<&CMat> {
        match self {
            Value::Matrix(m) => Some(m),
            Value::Scalar(_) => None,
        }
    }

    pub fn as_scalar(&self) -> Option<C64> {
        match self {
            Value::Scalar(z) => Some(*z),
            Value::Matrix(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Int(i64),
    Real(f64),
    Text(String),
    Coin(CoinJson),
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Param::Int(v) => serializer.serialize_i64(*v),
            Param::Real(v) => Sci(*v).serialize(serializer),
            Param::Text(s) => serializer.serialize_str(s),
            Param::Coin(c) => c.serialize(serializer),
        }
    }
}

/// Ordered parameter map with builder-style insertion.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, Param>);

impl Params {
    pub fn new() -> Self {
        Params(BTreeMap::new())
    }

    pub fn int(mut self, key: &str, v: impl TryInto<i64>) -> Self {
        let v = v.try_into().unwrap_or(i64::MAX);
        self.0.insert(key.to_string(), Param::Int(v));
        self
    }

    pub fn real(mut self, key: &str, v: f64) -> Self {
        self.0.insert(key.to_string(), Param::Real(v));
        self
    }

    pub fn text(mut self, key: &str, v: impl Into<String>) -> Self {
        self.0.insert(key.to_string(), Param::Text(v.into()));
        self
    }

    pub fn coin(mut self, key: &str, v: CoinJson) -> Self {
        self.0.insert(key.to_string(), Param::Coin(v));
        self
    }

    pub fn with(mut self, key: &str, v: Param) -> Self {
        self.0.insert(key.to_string(), v);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Param> {
        self.0.get(key)
    }

    pub fn merged(mut self, other: &Params) -> Self {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub params: Params,
    pub residual: Sci,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub check_name: String,
    pub params: Params,
    pub lhs: Value,
    pub rhs: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
}

impl IdentityReport {
    /// Evaluates `residual = dist(lhs, rhs)` and the verdict.
    pub fn new(
        check_name: impl Into<String>,
        params: Params,
        lhs: Value,
        rhs: Value,
        tolerance: f64,
        report_only: bool,
    ) -> Self {
        let residual = lhs.distance(&rhs);
        let verdict = if report_only {
            Verdict::ReportOnly
        } else if residual <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        IdentityReport {
            check_name: check_name.into(),
            params,
            lhs,
            rhs,
            residual,
            tolerance,
            verdict,
            counterexamples: Vec::new(),
        }
    }

    /// Folds many instance reports into one: the residual is the worst one,
    /// the sides are those of the worst instance, and instances whose residual
    /// exceeds `flag_above` (or that failed) become counterexamples in the
    /// given order.
    pub fn aggregate(
        check_name: impl Into<String>,
        params: Params,
        instances: Vec<IdentityReport>,
        tolerance: f64,
        report_only: bool,
        flag_above: f64,
    ) -> Self {
        let mut tally = Tally::new(flag_above, usize::MAX);
        for r in instances {
            tally.record_report(r);
        }
        tally.finish(check_name, params, tolerance, report_only)
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn to_json(&self) -> ReportJson<'_> {
        ReportJson {
            check: &self.check_name,
            params: &self.params,
            residual: Sci(self.residual),
            tolerance: Sci(self.tolerance),
            verdict: self.verdict,
            counterexamples: &self.counterexamples,
        }
    }
}

/// Streaming fold of identity instances into one report.
///
/// Keeps the worst instance's sides and at most `cap` counterexamples (the
/// first ones in recording order); counts everything.
#[derive(Clone, Debug)]
pub struct Tally {
    flag_above: f64,
    cap: usize,
    worst: Option<(f64, Value, Value)>,
    instances: u64,
    flagged: u64,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    pub fn new(flag_above: f64, cap: usize) -> Self {
        Tally {
            flag_above,
            cap,
            worst: None,
            instances: 0,
            flagged: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn record(&mut self, lhs: Value, rhs: Value, params: impl FnOnce() -> Params) {
        let residual = lhs.distance(&rhs);
        self.push(residual, false, params, || (lhs, rhs));
    }

    /// Records an instance known only by its residual.
    pub fn record_residual(&mut self, residual: f64, params: impl FnOnce() -> Params) {
        let sides = || {
            (
                Value::Scalar(C64::new(residual, 0.0)),
                Value::Scalar(C64::new(0.0, 0.0)),
            )
        };
        self.push(residual, false, params, sides);
    }

    pub fn record_report(&mut self, report: IdentityReport) {
        let IdentityReport {
            params,
            lhs,
            rhs,
            residual,
            verdict,
            ..
        } = report;
        let flag = verdict == Verdict::Fail;
        self.push(residual, flag, move || params, move || (lhs, rhs));
    }

    fn push(
        &mut self,
        residual: f64,
        force_flag: bool,
        params: impl FnOnce() -> Params,
        sides: impl FnOnce() -> (Value, Value),
    ) {
        self.instances += 1;
        // NaN residuals count as worst and are always flagged.
        let worse = match &self.worst {
            None => true,
            Some((w, _, _)) => residual > *w || (residual.is_nan() && !w.is_nan()),
        };
        if worse {
            let (lhs, rhs) = sides();
            self.worst = Some((residual, lhs, rhs));
        }
        if force_flag || residual > self.flag_above || residual.is_nan() {
            self.flagged += 1;
            if self.counterexamples.len() < self.cap {
                self.counterexamples.push(Counterexample {
                    params: params(),
                    residual: Sci(residual),
                });
            }
        }
    }

    /// Appends `later` after `self`, as if its instances were recorded last.
    pub fn merge(mut self, later: Tally) -> Tally {
        self.instances += later.instances;
        self.flagged += later.flagged;
        if let Some((res, lhs, rhs)) = later.worst {
            let worse = match &self.worst {
                None => true,
                Some((w, _, _)) => res > *w || (res.is_nan() && !w.is_nan()),
            };
            if worse {
                self.worst = Some((res, lhs, rhs));
            }
        }
        let room = self.cap.saturating_sub(self.counterexamples.len());
        self.counterexamples
            .extend(later.counterexamples.into_iter().take(room));
        self
    }

    pub fn instances(&self) -> u64 {
        self.instances
    }

    pub fn flagged(&self) -> u64 {
        self.flagged
    }

    /// Builds the report. `params` gains `instances`, and `flagged` whenever
    /// the counterexample list was truncated.
    pub fn finish(
        self,
        check_name: impl Into<String>,
        params: Params,
        tolerance: f64,
        report_only: bool,
    ) -> IdentityReport {
        let zero = || Value::Scalar(C64::new(0.0, 0.0));
        let (residual, lhs, rhs) = self.worst.unwrap_or_else(|| (0.0, zero(), zero()));
        let verdict = if report_only {
            Verdict::ReportOnly
        } else if residual <= tolerance {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let mut params = params.int("instances", self.instances);
        if self.flagged > self.counterexamples.len() as u64 {
            params = params.int("flagged", self.flagged);
        }
        IdentityReport {
            check_name: check_name.into(),
            params,
            lhs,
            rhs,
            residual,
            tolerance,
            verdict,
            counterexamples: self.counterexamples,
        }
    }
}

#[derive(Serialize)]
pub struct ReportJson<'a> {
    pub check: &'a str,
    pub params: &'a Params,
    pub residual: Sci,
    pub tolerance: Sci,
    pub verdict: Verdict,
    pub counterexamples: &'a [Counterexample],
}

/// True iff no pass/fail report failed; report-only entries never count.
pub fn suite_passed(reports: &[IdentityReport]) -> bool {
    reports.iter().all(|r| !r.failed())
}

pub fn write_reports<W: Write>(reports: &[IdentityReport], mut out: W) -> Result<()> {
    let json: Vec<ReportJson<'_>> = reports.iter().map(IdentityReport::to_json).collect();
    serde_json::to_writer_pretty(&mut out, &json)?;
    writeln!(out)?;
    Ok(())
}
