use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::{base_slopes, csv_field, heckoid_slopes, sweep, Failure, Report, SweepOptions, Verdict};
use crate::cancel::{min_pieces, relator_subwords_of, HeckoidContext};
use crate::error::Result;
use crate::runs::{cs_of_slope, match_pattern, Bindings, CyclicRunSeq, PatternExpr, Template};
use crate::slope::{enumerate_slopes, Slope, SlopeInterval};
use crate::word::CyclicAlternatingWord;

use super::VerificationReport;

/// Outcome for one slope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaVerdict {
    pub s: Slope,
    pub cs: CyclicRunSeq,
    pub pass: bool,
    /// The pattern that decided the verdict.
    pub pattern: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    /// Informational data that does not affect `pass`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict for LemmaVerdict {
    fn csv_header() -> &'static str {
        "s,cs,pass,pattern,position,detail"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.s,
            csv_field(&self.cs.to_string()),
            self.pass,
            csv_field(&self.pattern),
            self.position.map(|p| p.to_string()).unwrap_or_default(),
            csv_field(self.detail.as_deref().unwrap_or("")),
        )
    }

    fn failure(&self) -> Option<Failure> {
        (!self.pass).then(|| Failure {
            s: self.s.to_string(),
            t: None,
            cs: Some(self.cs.to_string()),
            pattern: Some(self.pattern.clone()),
            position: self.position,
            reason: self.reason.clone().unwrap_or_else(|| "violated".into()),
        })
    }
}

struct Verdicts {
    s: Slope,
    cs: CyclicRunSeq,
}

impl Verdicts {
    fn pass(self, pattern: impl Into<String>, position: Option<usize>) -> LemmaVerdict {
        LemmaVerdict {
            s: self.s,
            cs: self.cs,
            pass: true,
            pattern: pattern.into(),
            position,
            detail: None,
            reason: None,
        }
    }

    fn fail(self, pattern: impl Into<String>, position: Option<usize>, reason: impl Into<String>) -> LemmaVerdict {
        LemmaVerdict {
            s: self.s,
            cs: self.cs,
            pass: false,
            pattern: pattern.into(),
            position,
            detail: None,
            reason: Some(reason.into()),
        }
    }
}

fn with_detail(mut v: LemmaVerdict, detail: String) -> LemmaVerdict {
    v.detail = Some(detail);
    v
}

/// Parse a pattern over the context's bindings and expand it.
fn template(src: &str, b: &Bindings) -> Result<(String, Template)> {
    let expr: PatternExpr = src.parse()?;
    Ok((src.to_string(), expr.expand(b)?))
}

/// How `I(r;n)` splits into `I1(r) ∪ I2(r)` and the difference ranges at one
/// denominator bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangePartition {
    pub heckoid: usize,
    pub base: usize,
    pub difference: usize,
    /// In both the base and the difference enumeration.
    pub double_counted: Vec<Slope>,
    /// In `I(r;n)` but in neither part.
    pub dropped: Vec<Slope>,
    /// In a part but not in `I(r;n)`.
    pub stray: Vec<Slope>,
}

impl RangePartition {
    pub fn is_partition(&self) -> bool {
        self.double_counted.is_empty() && self.dropped.is_empty() && self.stray.is_empty()
    }
}

/// `(I1(r;n) \ I1(r), I2(r;n) \ I2(r))` as intervals.
pub fn difference_intervals(ctx: &HeckoidContext) -> Result<(SlopeInterval, SlopeInterval)> {
    let iv = &ctx.intervals;
    let d1 = SlopeInterval::new(iv.i1_r.hi, iv.i1_rn.hi, !iv.i1_r.hi_closed, iv.i1_rn.hi_closed)?;
    let d2 = SlopeInterval::new(iv.i2_rn.lo, iv.i2_r.lo, iv.i2_rn.lo_closed, !iv.i2_r.lo_closed)?;
    Ok((d1, d2))
}

pub fn difference_slopes(ctx: &HeckoidContext, max_den: i64) -> Result<Vec<Slope>> {
    let (d1, d2) = difference_intervals(ctx)?;
    let mut v = enumerate_slopes(&d1, max_den);
    v.extend(enumerate_slopes(&d2, max_den));
    Ok(v)
}

/// Check `I(r;n) = (I1(r) ∪ I2(r)) ⊔ differences` on slopes of denominator at most `max_den`.
pub fn range_partition(ctx: &HeckoidContext, max_den: i64) -> Result<RangePartition> {
    let h = heckoid_slopes(ctx, max_den);
    let b = base_slopes(ctx, max_den);
    let d = difference_slopes(ctx, max_den)?;
    let mut count: BTreeMap<Slope, (u8, u8)> = BTreeMap::new();
    for &s in &h {
        count.entry(s).or_default().0 += 1;
    }
    for &s in b.iter().chain(&d) {
        count.entry(s).or_default().1 += 1;
    }
    let pick = |f: fn(&(u8, u8)) -> bool| -> Vec<Slope> {
        count.iter().filter(|(_, c)| f(c)).map(|(&s, _)| s).collect()
    };
    Ok(RangePartition {
        heckoid: h.len(),
        base: b.len(),
        difference: d.len(),
        double_counted: pick(|c| c.1 > 1 || c.0 > 1),
        dropped: pick(|c| c.0 > 0 && c.1 == 0),
        stray: pick(|c| c.0 == 0 && c.1 > 0),
    })
}

fn run_lemma<F>(
    lemma: &str,
    ctx: &HeckoidContext,
    opts: SweepOptions,
    slopes: Vec<Slope>,
    check: F,
) -> Result<VerificationReport>
where
    F: Fn(Verdicts) -> Result<LemmaVerdict> + Sync + Send,
{
    let started = Instant::now();
    let results = sweep(&slopes, opts.jobs, |&s| {
        let cs = cs_of_slope(s)?;
        check(Verdicts { s, cs })
    })?;
    let verdicts = results.into_iter().collect::<Result<Vec<_>>>()?;
    let part = range_partition(ctx, opts.max_den)?;
    let mut summary = BTreeMap::new();
    summary.insert("heckoid_slopes".into(), part.heckoid as u64);
    summary.insert("base_slopes".into(), part.base as u64);
    summary.insert("difference_slopes".into(), part.difference as u64);
    summary.insert("partition_ok".into(), part.is_partition() as u64);
    summary.insert("passed".into(), verdicts.iter().filter(|v| v.pass).count() as u64);
    let mut report = Report::assemble(
        lemma,
        ctx,
        Some(ctx.n()),
        opts.max_den,
        started,
        verdicts,
        summary,
    );
    if !part.is_partition() {
        report.failures.push(Failure::at(
            "range",
            format!(
                "range partition broken: double counted {:?}, dropped {:?}, stray {:?}",
                part.double_counted, part.dropped, part.stray
            ),
        ));
    }
    report.conclusion = if report.failures.is_empty() { "pass" } else { "fail" }.into();
    Ok(report)
}

fn status(found: Option<usize>) -> String {
    match found {
        Some(i) => format!("present at {i}"),
        None => "absent".into(),
    }
}

/// The parity-selected `(2n-2)<S1,S2>, S1` (even `k`) or `(2n-2)<S2,S1>, S2`
/// (odd `k`) is absent from `CS(s)` on `I(r;n)`, as are `(2n-1)<S1,S2>` and
/// `(2n-1)<S2,S1>`.
pub fn verify_connection(ctx: &HeckoidContext, opts: SweepOptions) -> Result<VerificationReport> {
    let b = Bindings::from_decomp(&ctx.decomp);
    let n = ctx.n();
    let even = format!("{}*(S1 S2) S1", 2 * n - 2);
    let odd = format!("{}*(S2 S1) S2", 2 * n - 2);
    let (main, other) = if ctx.params.k_is_even() { (even, odd) } else { (odd, even) };
    let checks = [
        template(&main, &b)?,
        template(&format!("{}*(S1 S2)", 2 * n - 1), &b)?,
        template(&format!("{}*(S2 S1)", 2 * n - 1), &b)?,
    ];
    let info = template(&other, &b)?;
    let slopes = heckoid_slopes(ctx, opts.max_den);
    run_lemma("connection", ctx, opts, slopes, |v| {
        let detail = format!("opposite parity {}: {}", info.0, status(match_pattern(&v.cs, &info.1)));
        for (src, t) in &checks {
            if let Some(i) = match_pattern(&v.cs, t) {
                let reason = format!("{src} = {t} occurs in CS(s)");
                return Ok(with_detail(v.fail(src, Some(i), reason), detail));
            }
        }
        Ok(with_detail(v.pass(&main, None), detail))
    })
}

/// One of `S1`, `S2` is absent from `CS(s)` on `I1(r) ∪ I2(r)`.
pub fn verify_inside_orbit(ctx: &HeckoidContext, opts: SweepOptions) -> Result<VerificationReport> {
    let s1 = Template::exact(ctx.decomp.s1.terms());
    let s2 = Template::exact(ctx.decomp.s2.terms());
    let slopes = base_slopes(ctx, opts.max_den);
    run_lemma("inside-orbit", ctx, opts, slopes, |v| {
        match (match_pattern(&v.cs, &s1), match_pattern(&v.cs, &s2)) {
            (Some(i), Some(j)) => {
                let reason = format!("S1 = {s1} at {i} and S2 = {s2} at {j}");
                Ok(v.fail("S1", Some(i), reason))
            }
            (None, _) => Ok(v.pass("S1", None)),
            (_, None) => Ok(v.pass("S2", None)),
        }
    })
}

/// `(m+1, S2e, S1, S2, S1, S2b, m+1)` (even `k`) or
/// `(m, S1e, S2, S1, S2, S1b, m)` (odd `k`) occurs in `CS(s)` on the
/// single-block range.
pub fn verify_outside_orbit2(ctx: &HeckoidContext, opts: SweepOptions) -> Result<VerificationReport> {
    let b = Bindings::from_decomp(&ctx.decomp);
    let (src, t) = if ctx.params.k_is_even() {
        template("m1 S2e S1 S2 S1 S2b m1", &b)?
    } else {
        template("m S1e S2 S1 S2 S1b m", &b)?
    };
    let slopes = enumerate_slopes(&ctx.params.single_block_range(), opts.max_den);
    run_lemma("outside-orbit2", ctx, opts, slopes, |v| match match_pattern(&v.cs, &t) {
        Some(i) => Ok(v.pass(&src, Some(i))),
        None => {
            let reason = format!("{src} = {t} does not occur in CS(s)");
            Ok(v.fail(&src, None, reason))
        }
    })
}

/// `(m, S1e, d<S2,S1>, S2, S1b, m)` (even `k`) or
/// `(m+1, S2e, d<S1,S2>, S1, S2b, m+1)` (odd `k`) occurs in `CS(s)` for some
/// `1 <= d <= 2n-3` on the multi-block range.
pub fn verify_outside_orbit(ctx: &HeckoidContext, opts: SweepOptions) -> Result<VerificationReport> {
    let b = Bindings::from_decomp(&ctx.decomp);
    let d_max = 2 * ctx.n() - 3;
    let templates = (1..=d_max)
        .map(|d| {
            let src = if ctx.params.k_is_even() {
                format!("m S1e {d}*(S2 S1) S2 S1b m")
            } else {
                format!("m1 S2e {d}*(S1 S2) S1 S2b m1")
            };
            template(&src, &b)
        })
        .collect::<Result<Vec<_>>>()?;
    let slopes = enumerate_slopes(&ctx.params.multi_block_range(), opts.max_den);
    run_lemma("outside-orbit", ctx, opts, slopes, |v| {
        for (d, (src, t)) in templates.iter().enumerate() {
            if let Some(i) = match_pattern(&v.cs, t) {
                return Ok(with_detail(v.pass(src, Some(i)), format!("d = {}", d + 1)));
            }
        }
        let reason = format!("no d in 1..={d_max} gives a match");
        Ok(v.fail(&templates[0].0, None, reason))
    })
}

/// No relator subword of `(u_s)` needs `4n-1` or more pieces, for `s` in `I(r;n)`.
///
/// Adding one letter raises the piece count by at most one, so it suffices
/// to bound the maximal relator subwords.
pub fn verify_piece_bound(ctx: &HeckoidContext, opts: SweepOptions) -> Result<VerificationReport> {
    let bound = 4 * ctx.n() - 1;
    let slopes = heckoid_slopes(ctx, opts.max_den);
    run_lemma("piece-bound", ctx, opts, slopes, |v| {
        let word = CyclicAlternatingWord::of_slope(v.s)?;
        let mut worst: Option<(u32, usize, String)> = None;
        for sub in relator_subwords_of(&word, &ctx.symmetrized) {
            let k = min_pieces(sub.word.letters(), &ctx.symmetrized)?;
            if worst.as_ref().is_none_or(|w| k > w.0) {
                worst = Some((k, sub.start, sub.word.to_string()));
            }
        }
        let Some((k, start, sub)) = worst else {
            return Ok(with_detail(v.pass("", None), "no relator subwords".into()));
        };
        let detail = format!("max min_pieces = {k} < {bound}");
        if k < bound {
            Ok(with_detail(v.pass(sub, Some(start)), detail))
        } else {
            Ok(v.fail(sub, Some(start), format!("relator subword needs {k} >= {bound} pieces")))
        }
    })
}

/// On the difference ranges `CS(s)` contains both `S1` and `S2` and has
/// terms in `{m, m+1}`.
pub fn verify_span(ctx: &HeckoidContext, opts: SweepOptions) -> Result<VerificationReport> {
    let m = ctx.m();
    let s1 = Template::exact(ctx.decomp.s1.terms());
    let s2 = Template::exact(ctx.decomp.s2.terms());
    let slopes = difference_slopes(ctx, opts.max_den)?;
    run_lemma("span", ctx, opts, slopes, |v| {
        let stray: Vec<u32> = v.cs.values().into_iter().filter(|&x| x != m && x != m + 1).collect();
        match (match_pattern(&v.cs, &s1), match_pattern(&v.cs, &s2)) {
            (None, _) => Ok(v.fail("S1", None, format!("S1 = {s1} absent"))),
            (_, None) => Ok(v.fail("S2", None, format!("S2 = {s2} absent"))),
            _ if !stray.is_empty() => Ok(v.fail(
                format!("{{{m},{}}}", m + 1),
                None,
                format!("terms {stray:?} outside {{{m},{}}}", m + 1),
            )),
            (Some(i), Some(_)) => Ok(v.pass("S1 S2", Some(i))),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cancel::build_context;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    fn verdict<'a>(r: &'a VerificationReport, s: &str) -> &'a LemmaVerdict {
        r.verdicts.iter().find(|v| v.s == sl(s)).unwrap()
    }

    #[test]
    fn connection_examples() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let rep = verify_connection(&ctx, SweepOptions::new(8)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(verdict(&rep, "3/8").pass);
        assert!(verdict(&rep, "1/2").pass);
        assert_eq!(rep.checked, rep.verdicts.len());
        assert!(rep.verdicts.windows(2).all(|w| w[0].s < w[1].s));
    }

    #[test]
    fn inside_orbit_examples() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let rep = verify_inside_orbit(&ctx, SweepOptions::new(8)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        // CS(1/3) = <3,3> lacks S2 = (2); CS(1/2) = <2,2> lacks S1 = (3).
        assert_eq!(verdict(&rep, "1/3").pattern, "S2");
        assert_eq!(verdict(&rep, "1/2").pattern, "S1");
        assert!(verdict(&rep, "0/1").pass);
    }

    #[test]
    fn outside_orbit_examples() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let rep = verify_outside_orbit2(&ctx, SweepOptions::new(11)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(verdict(&rep, "4/11").pass);
        assert!(verdict(&rep, "3/8").pass);

        let rep = verify_outside_orbit(&ctx, SweepOptions::new(8)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        let v = verdict(&rep, "3/7");
        assert_eq!(v.detail.as_deref(), Some("d = 1"));

        let ctx3 = build_context(sl("2/5"), 3).unwrap();
        let rep = verify_outside_orbit(&ctx3, SweepOptions::new(8)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(verdict(&rep, "3/7").pass);
    }

    #[test]
    fn piece_bound_and_span_examples() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let rep = verify_piece_bound(&ctx, SweepOptions::new(12)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(verdict(&rep, "3/8").pass);
        assert!(verdict(&rep, "1/1").pass);

        let rep = verify_span(&ctx, SweepOptions::new(8)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(verdict(&rep, "3/8").pass);
        assert!(verdict(&rep, "3/7").pass);
        assert!(rep.verdicts.iter().all(|v| v.s != sl("1/3")));
    }

    #[test]
    fn partition_holds_on_the_grid() {
        for r in ["2/5", "3/8", "2/7", "3/10", "4/11", "5/12"] {
            for n in [2, 3] {
                let ctx = build_context(sl(r), n).unwrap();
                let p = range_partition(&ctx, 60).unwrap();
                assert!(p.is_partition(), "{r} n={n}: {p:?}");
                assert_eq!(p.base + p.difference, p.heckoid);
            }
        }
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        let ctx = build_context(sl("3/8"), 2).unwrap();
        let a = verify_connection(&ctx, SweepOptions::new(30)).unwrap();
        let b = verify_connection(&ctx, SweepOptions::new(30).jobs(3)).unwrap();
        assert_eq!(a.to_json_untimed(), b.to_json_untimed());
    }

    #[test]
    fn broken_verdict_reports_the_witness() {
        let v = Verdicts {
            s: sl("3/8"),
            cs: "⟨3,3,2,3,3,2⟩".parse().unwrap(),
        }
        .fail("S1", Some(2), "forced");
        let f = v.failure().unwrap();
        assert_eq!(f.s, "3/8");
        assert_eq!(f.cs.as_deref(), Some("⟨3,3,2,3,3,2⟩"));
        assert_eq!(f.position, Some(2));
    }
}
