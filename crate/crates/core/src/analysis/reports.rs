//! CSV renderings of the reports and tolerance checks attached to them.
//! JSON comes straight from `serde`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

use super::bounds::{BoundReport, IntegralityReport};
use super::density::{BandReport, CmScanReport, DistinctReport, JointReport, SatoTateReport, SignDensityReport};

/// A report with a tabular form.
pub trait CsvReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()>;
}

fn writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

fn csv_error(e: csv::Error) -> Error {
    Error::format("<report>", e.to_string())
}

fn finish(mut w: csv::Writer<&mut dyn Write>) -> Result<()> {
    w.flush().map_err(|e| Error::io("<report>", e))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

fn rows(out: &mut dyn Write, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = writer(out);
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(row).map_err(csv_error)?;
    }
    finish(w)
}

impl CsvReport for SatoTateReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        rows(
            out,
            &["lo", "hi", "count", "empirical", "expected"],
            self.bins.iter().map(|b| {
                vec![
                    b.lo.to_string(),
                    b.hi.to_string(),
                    b.count.to_string(),
                    b.empirical.to_string(),
                    b.expected.to_string(),
                ]
            }),
        )
    }
}

impl CsvReport for SignDensityReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let (c, r) = (&self.counts, &self.ratios);
        let mut table = vec![
            ("positive", c.positive, r.positive),
            ("negative", c.negative, r.negative),
            ("zero", c.zero, r.zero),
            ("nonnegative", c.nonnegative, r.nonnegative),
            ("nonpositive", c.nonpositive, r.nonpositive),
        ];
        if let (Some(d), Some(dr)) = (self.disagreement, self.disagreement_ratio) {
            table.push(("disagreement", d, dr));
        }
        rows(
            out,
            &["bucket", "count", "ratio"],
            table
                .into_iter()
                .map(|(k, n, x)| vec![k.to_string(), n.to_string(), x.to_string()]),
        )
    }
}

impl CsvReport for JointReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        rows(out, &JOINT_HEADER, [joint_row(self)])
    }
}

const JOINT_HEADER: [&str; 8] = [
    "i1_lo",
    "i1_hi",
    "i2_lo",
    "i2_hi",
    "count",
    "pi",
    "empirical",
    "expected",
];

fn joint_row(r: &JointReport) -> Vec<String> {
    vec![
        r.i1.lo.to_string(),
        r.i1.hi.to_string(),
        r.i2.lo.to_string(),
        r.i2.hi.to_string(),
        r.count.to_string(),
        r.pi.to_string(),
        r.empirical.to_string(),
        r.expected.to_string(),
    ]
}

/// Several joint cells as one table.
pub fn write_joint_csv(cells: &[JointReport], out: &mut dyn Write) -> Result<()> {
    rows(out, &JOINT_HEADER, cells.iter().map(joint_row))
}

impl CsvReport for BandReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        rows(
            out,
            &["level", "xmax", "pi", "pi_good", "count", "ratio"],
            [vec![
                self.level.to_string(),
                self.xmax.to_string(),
                self.pi.to_string(),
                self.pi_good.to_string(),
                self.count.to_string(),
                self.ratio.to_string(),
            ]],
        )
    }
}

impl CsvReport for CmScanReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        rows(
            out,
            &["p", "num", "den"],
            self.primes
                .iter()
                .map(|e| vec![e.p.to_string(), e.num.clone(), e.den.clone()]),
        )
    }
}

impl CsvReport for DistinctReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        rows(
            out,
            &[
                "level",
                "xmax",
                "positive",
                "negative",
                "distinct_positive",
                "distinct_negative",
            ],
            [vec![
                self.level.to_string(),
                self.xmax.to_string(),
                self.positive.to_string(),
                self.negative.to_string(),
                self.distinct_positive.to_string(),
                self.distinct_negative.to_string(),
            ]],
        )
    }
}

impl CsvReport for IntegralityReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        rows(
            out,
            &["n", "c", "sigma0"],
            self.integral
                .iter()
                .map(|e| vec![e.n.to_string(), e.c.to_string(), e.sigma0.to_string()]),
        )
    }
}

impl CsvReport for BoundReport {
    fn write_csv(&self, out: &mut dyn Write) -> Result<()> {
        let table = [
            ("level", self.level.to_string()),
            ("limit", self.limit.to_string()),
            ("d1", opt(self.d1)),
            ("d2", opt(self.d2)),
            ("d0", opt(self.d0)),
            ("bound_38", self.bound_38.to_string()),
            ("psi2", self.psi2.to_string()),
            ("n0", self.n0.to_string()),
            ("d1_within_bound_38", opt(self.d1_within_bound_38)),
            ("d0_within_bound_38", opt(self.d0_within_bound_38)),
            ("inconclusive", self.inconclusive.to_string()),
        ];
        rows(
            out,
            &["field", "value"],
            table.into_iter().map(|(k, v)| vec![k.to_string(), v]),
        )
    }
}

/// A pass/fail comparison of one report value against a threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// The condition in words, e.g. `|x - 0.5| < 0.02`.
    pub condition: String,
    pub pass: bool,
}

impl Check {
    /// `|value − target| < tolerance`.
    pub fn near(name: impl Into<String>, value: f64, target: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            condition: format!("|x - {target}| < {tolerance}"),
            pass: (value - target).abs() < tolerance,
        }
    }

    /// `value < bound`.
    pub fn below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            value,
            condition: format!("x < {bound}"),
            pass: value < bound,
        }
    }

    /// `value > bound`.
    pub fn above(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            value,
            condition: format!("x > {bound}"),
            pass: value > bound,
        }
    }
}
