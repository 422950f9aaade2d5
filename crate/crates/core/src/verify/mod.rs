//! Report-producing sweeps over bounded-denominator slopes.

mod audit;
mod lemmas;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cancel::HeckoidContext;
use crate::error::{Error, Result};
use crate::slope::{enumerate_slopes, Slope};
use crate::TOOL_VERSION;

pub use audit::{
    audit_conjugacy, audit_torsion, separator_self_test, AuditOptions, PairStatus, PairVerdict,
    SelfTest, TorsionVerdict,
};
pub use lemmas::{
    difference_intervals, difference_slopes, range_partition, verify_connection, verify_inside_orbit, verify_outside_orbit,
    verify_outside_orbit2, verify_piece_bound, verify_span, LemmaVerdict, RangePartition,
};

/// The lemma and audit identifiers accepted by [`run_check`].
pub const LEMMAS: [&str; 6] = [
    "connection",
    "inside-orbit",
    "outside-orbit2",
    "outside-orbit",
    "piece-bound",
    "span",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub max_den: i64,
    /// Worker threads; `1` runs on the calling thread, `0` uses all cores.
    pub jobs: usize,
}

impl SweepOptions {
    pub fn new(max_den: i64) -> Self {
        SweepOptions { max_den, jobs: 1 }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

/// A counterexample or violation with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub s: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    pub reason: String,
}

impl Failure {
    pub(crate) fn at(s: impl ToString, reason: impl Into<String>) -> Self {
        Failure {
            s: s.to_string(),
            t: None,
            cs: None,
            pattern: None,
            position: None,
            reason: reason.into(),
        }
    }
}

/// One row of a report: a slope, a pair or a `(slope, power)` entry.
pub trait Verdict: Serialize + Send {
    fn csv_header() -> &'static str;
    fn csv_row(&self) -> String;
    fn failure(&self) -> Option<Failure>;
}

/// Field order is part of the output format.
#[derive(Clone, Debug, Serialize)]
pub struct Report<V> {
    pub lemma: String,
    pub r: Slope,
    pub n: Option<u32>,
    pub max_den: i64,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub duration_ms: u64,
    pub tool_version: String,
    /// `pass`/`fail` for lemmas; audits say whether the theorem was confirmed.
    pub conclusion: String,
    pub summary: BTreeMap<String, u64>,
    pub verdicts: Vec<V>,
}

pub type VerificationReport = Report<LemmaVerdict>;

impl<V: Verdict> Report<V> {
    pub(crate) fn assemble(
        lemma: &str,
        ctx: &HeckoidContext,
        n: Option<u32>,
        max_den: i64,
        started: Instant,
        verdicts: Vec<V>,
        summary: BTreeMap<String, u64>,
    ) -> Self {
        let failures: Vec<Failure> = verdicts.iter().filter_map(Verdict::failure).collect();
        let conclusion = if failures.is_empty() { "pass" } else { "fail" }.to_string();
        Report {
            lemma: lemma.to_string(),
            r: ctx.r(),
            n,
            max_den,
            checked: verdicts.len(),
            failures,
            duration_ms: started.elapsed().as_millis() as u64,
            tool_version: TOOL_VERSION.to_string(),
            conclusion,
            summary,
            verdicts,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// JSON with the timing field zeroed, for byte comparisons.
    pub fn to_json_untimed(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v["duration_ms"] = 0.into();
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(V::csv_header());
        out.push('\n');
        for v in &self.verdicts {
            out.push_str(&v.csv_row());
            out.push('\n');
        }
        out
    }
}

/// Apply `f` to every item, in parallel when `jobs != 1`, preserving order.
pub fn sweep<T, R, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs == 1 {
        return Ok(items.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

/// Slopes of `I(r;n) = I1(r;n) ∪ I2(r;n)` with denominator at most `max_den`, ascending.
pub fn heckoid_slopes(ctx: &HeckoidContext, max_den: i64) -> Vec<Slope> {
    let mut v = enumerate_slopes(&ctx.intervals.i1_rn, max_den);
    v.extend(enumerate_slopes(&ctx.intervals.i2_rn, max_den));
    v
}

/// Slopes of `I1(r) ∪ I2(r)` with denominator at most `max_den`, ascending.
pub fn base_slopes(ctx: &HeckoidContext, max_den: i64) -> Vec<Slope> {
    let mut v = enumerate_slopes(&ctx.intervals.i1_r, max_den);
    v.extend(enumerate_slopes(&ctx.intervals.i2_r, max_den));
    v
}

/// Run the lemma sweep named `lemma`.
pub fn run_check(lemma: &str, ctx: &HeckoidContext, opts: SweepOptions) -> Result<VerificationReport> {
    match lemma {
        "connection" => verify_connection(ctx, opts),
        "inside-orbit" => verify_inside_orbit(ctx, opts),
        "outside-orbit2" => verify_outside_orbit2(ctx, opts),
        "outside-orbit" => verify_outside_orbit(ctx, opts),
        "piece-bound" => verify_piece_bound(ctx, opts),
        "span" => verify_span(ctx, opts),
        _ => Err(Error::Parse {
            what: "lemma",
            input: lemma.to_string(),
        }),
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
