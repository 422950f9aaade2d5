use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{heckoid_slopes, sweep, Failure, Report, Verdict};
use crate::cancel::{
    dehn_reduce, free_reduce, obstruction_heckoid, power_decompose, DehnTrace, HeckoidContext,
    MatchStatus, PowerDecomp,
};
use crate::error::Result;
use crate::quotient::{separate_in, Certificate, RepCache, RepEnumeration, RepSource, DEFAULT_DEGREE_MAX};
use crate::slope::Slope;
use crate::word::{invert_letters, power, u_word, CyclicAlternatingWord, Letter};

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub max_den: i64,
    pub t_max: u32,
    /// Largest permutation degree tried for separation; below 2 disables it.
    pub degree_max: usize,
    /// Candidate cap per degree; `None` enumerates completely.
    pub budget: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
    /// Keep full Dehn traces in torsion verdicts.
    pub trace: bool,
}

impl AuditOptions {
    pub fn new(max_den: i64) -> Self {
        AuditOptions {
            max_den,
            t_max: 3,
            degree_max: DEFAULT_DEGREE_MAX,
            budget: None,
            cache_dir: None,
            jobs: 1,
            trace: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairStatus {
    /// `(u_s)` differs from `(u_{s'})` and `(u_{s'}^{-1})` as cyclic words.
    FreeDistinct,
    /// A finite quotient distinguishes the conjugacy classes.
    QuotientSeparated,
    /// Identical cyclic words for distinct slopes.
    Conjugate,
}

impl PairStatus {
    fn as_str(self) -> &'static str {
        match self {
            PairStatus::FreeDistinct => "FREE_DISTINCT",
            PairStatus::QuotientSeparated => "QUOTIENT_SEPARATED",
            PairStatus::Conjugate => "CONJUGATE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub s: Slope,
    pub s2: Slope,
    pub status: PairStatus,
    /// Highest representation degree examined.
    pub searched_to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Verdict for PairVerdict {
    fn csv_header() -> &'static str {
        "s,s2,status,searched_to,degree"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.s,
            self.s2,
            self.status.as_str(),
            self.searched_to,
            self.certificate
                .as_ref()
                .map(|c| c.rep.degree.to_string())
                .unwrap_or_default()
        )
    }

    fn failure(&self) -> Option<Failure> {
        (self.status == PairStatus::Conjugate).then(|| Failure {
            s: self.s.to_string(),
            t: None,
            cs: None,
            pattern: None,
            position: None,
            reason: format!("(u_s) equals (u_{{{}}})^{{±1}}", self.s2),
        })
    }
}

fn representations(ctx: &HeckoidContext, opts: &AuditOptions) -> Result<Vec<RepEnumeration>> {
    let cache = match &opts.cache_dir {
        Some(d) => Some(RepCache::new(d)?),
        None => RepCache::from_env()?,
    };
    let source = RepSource {
        cache: cache.as_ref(),
        budget: opts.budget,
    };
    (2..=opts.degree_max).map(|k| source.reps(ctx, k)).collect()
}

/// Every unordered pair of distinct slopes of `I(r;n)` is checked for
/// distinct cyclic words and, when representations are available, for a
/// replayed separation certificate.
pub fn audit_conjugacy(ctx: &HeckoidContext, opts: &AuditOptions) -> Result<Report<PairVerdict>> {
    let started = Instant::now();
    let enums = representations(ctx, opts)?;
    let slopes = heckoid_slopes(ctx, opts.max_den);
    let words = slopes
        .iter()
        .map(|&s| CyclicAlternatingWord::of_slope(s))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..slopes.len())
        .flat_map(|i| (i + 1..slopes.len()).map(move |j| (i, j)))
        .collect();
    let results = sweep(&pairs, opts.jobs, |&(i, j)| -> Result<PairVerdict> {
        let (w, o) = (&words[i], &words[j]);
        let mut v = PairVerdict {
            s: slopes[i],
            s2: slopes[j],
            status: PairStatus::FreeDistinct,
            searched_to: 1,
            certificate: None,
        };
        if w == o || *w == o.inverse() {
            v.status = PairStatus::Conjugate;
            return Ok(v);
        }
        let sep = separate_in(
            w.representative().letters(),
            o.representative().letters(),
            ctx,
            &enums,
        );
        v.searched_to = sep.searched_to;
        if let Some(cert) = sep.certificate {
            if cert.replay()? {
                v.status = PairStatus::QuotientSeparated;
                v.certificate = Some(cert);
            }
        }
        Ok(v)
    })?;
    let verdicts = results.into_iter().collect::<Result<Vec<_>>>()?;
    let mut summary = BTreeMap::new();
    for st in [PairStatus::FreeDistinct, PairStatus::QuotientSeparated, PairStatus::Conjugate] {
        let c = verdicts.iter().filter(|v| v.status == st).count();
        summary.insert(st.as_str().to_string(), c as u64);
    }
    summary.insert("slopes".into(), slopes.len() as u64);
    summary.insert(
        "representations".into(),
        enums.iter().map(|e| e.reps.len() as u64).sum(),
    );
    summary.insert(
        "enumeration_complete".into(),
        enums.iter().all(|e| e.complete) as u64,
    );
    let mut report = Report::assemble("conjugacy", ctx, Some(ctx.n()), opts.max_den, started, verdicts, summary);
    report.conclusion = conclusion(
        report.passed(),
        report.verdicts.iter().all(|v| v.status == PairStatus::QuotientSeparated),
    );
    Ok(report)
}

fn conclusion(passed: bool, confirmed: bool) -> String {
    match (passed, confirmed) {
        (false, _) => "counterexample",
        (true, true) => "theorem-confirmed",
        (true, false) => "theorem-consistent",
    }
    .into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionVerdict {
    pub s: Slope,
    pub t: u32,
    /// Length of the Dehn-reduced `(u_s)^t`.
    pub reduced_length: usize,
    pub dehn_steps: usize,
    pub obstruction: MatchStatus,
    /// Present when the obstruction is absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    /// Rotation of `u_s^t` that factors as `v^d v1`, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power_rotation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<PowerDecomp>,
    /// `|v1| < |u_r|` for the factorization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v1_shorter: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<DehnTrace>,
}

impl Verdict for TorsionVerdict {
    fn csv_header() -> &'static str {
        "s,t,reduced_length,dehn_steps,obstruction,power_d"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.s,
            self.t,
            self.reduced_length,
            self.dehn_steps,
            match self.obstruction {
                MatchStatus::Present => "PRESENT",
                MatchStatus::Absent => "ABSENT",
            },
            self.power.as_ref().map(|p| p.d.to_string()).unwrap_or_default(),
        )
    }

    fn failure(&self) -> Option<Failure> {
        (self.reduced_length == 0).then(|| Failure {
            s: self.s.to_string(),
            t: Some(self.t),
            cs: None,
            pattern: None,
            position: None,
            reason: "(u_s)^t Dehn-reduces to the empty word".into(),
        })
    }
}

/// For `s ∈ I(r;n)` and `1 <= t <= t_max`: Dehn reduction of `(u_s)^t`,
/// the shape obstruction and the `v^d v1` factorization against `u_r`.
pub fn audit_torsion(ctx: &HeckoidContext, opts: &AuditOptions) -> Result<Report<TorsionVerdict>> {
    let started = Instant::now();
    let items: Vec<(Slope, u32)> = heckoid_slopes(ctx, opts.max_den)
        .into_iter()
        .flat_map(|s| (1..=opts.t_max).map(move |t| (s, t)))
        .collect();
    let results = sweep(&items, opts.jobs, |&(s, t)| -> Result<TorsionVerdict> {
        let u = u_word(s)?;
        let w = power(&u, t as usize)?;
        let dehn = dehn_reduce(w.letters(), &ctx.symmetrized, true);
        let obs = obstruction_heckoid(&CyclicAlternatingWord::new(w.clone())?, ctx);
        let found = (0..u.len()).find_map(|i| {
            let rot: Vec<Letter> = w.cyclic_slice(i, w.len());
            power_decompose(&rot, &ctx.u_r).map(|p| (i, p))
        });
        let v1_shorter = found.as_ref().map(|(_, p)| p.v1.len() < ctx.u_r.len());
        let (power_rotation, power) = found.unzip();
        Ok(TorsionVerdict {
            s,
            t,
            reduced_length: dehn.result.len(),
            dehn_steps: dehn.steps.len(),
            obstruction: obs.status,
            certificate: obs.certificate,
            power_rotation,
            power,
            v1_shorter,
            trace: opts.trace.then_some(dehn),
        })
    })?;
    let verdicts = results.into_iter().collect::<Result<Vec<_>>>()?;
    let mut summary = BTreeMap::new();
    let count = |f: &dyn Fn(&TorsionVerdict) -> bool| verdicts.iter().filter(|v| f(v)).count() as u64;
    summary.insert("empty_reductions".into(), count(&|v| v.reduced_length == 0));
    summary.insert("obstruction_absent".into(), count(&|v| v.obstruction == MatchStatus::Absent));
    summary.insert("power_factorizations".into(), count(&|v| v.power.is_some()));
    let confirmed = verdicts.iter().all(|v| v.obstruction == MatchStatus::Absent);
    let mut report = Report::assemble("torsion", ctx, Some(ctx.n()), opts.max_den, started, verdicts, summary);
    report.conclusion = conclusion(report.passed(), confirmed);
    Ok(report)
}

/// Outcome of feeding known-conjugate pairs to the separator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfTest {
    pub trials: usize,
    /// Trials where a certificate was (wrongly) produced.
    pub separated: usize,
}

impl SelfTest {
    pub fn passed(&self) -> bool {
        self.separated == 0
    }
}

fn random_reduced(rng: &mut ChaCha8Rng, len: usize) -> Vec<Letter> {
    let all = [Letter::APos, Letter::BPos, Letter::ANeg, Letter::BNeg];
    let mut w: Vec<Letter> = Vec::with_capacity(len);
    while w.len() < len {
        let l = all[rng.random_range(0..4)];
        if w.last() != Some(&l.inverse()) {
            w.push(l);
        }
    }
    w
}

/// Separate `u_s` from `g u_s^{±1} g^{-1}` for random `s ∈ I(r;n)` and
/// conjugators of at most 8 letters. A sound separator never succeeds.
pub fn separator_self_test(
    ctx: &HeckoidContext,
    opts: &AuditOptions,
    trials: usize,
    seed: u64,
) -> Result<SelfTest> {
    let enums = representations(ctx, opts)?;
    let slopes = heckoid_slopes(ctx, opts.max_den);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut separated = 0;
    for _ in 0..trials {
        let s = slopes[rng.random_range(0..slopes.len())];
        let u = u_word(s)?.into_letters();
        let len = rng.random_range(0..=8);
        let g = random_reduced(&mut rng, len);
        let core = if rng.random_bool(0.5) { invert_letters(&u) } else { u.clone() };
        let conj: Vec<Letter> = g.iter().chain(&core).chain(&invert_letters(&g)).copied().collect();
        let conj = free_reduce(&conj);
        if separate_in(&u, &conj, ctx, &enums).certificate.is_some() {
            separated += 1;
        }
    }
    Ok(SelfTest { trials, separated })
}
