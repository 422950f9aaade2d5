//! `heckoid` command line: context inspection, single-object queries,
//! lemma sweeps and audits.
//!
//! Exit codes: 0 when everything checked passes, 1 when a counterexample or
//! violation was found, 2 for usage and input errors.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heckoid_core::cancel::{
    cyclic_power, dehn_reduce, min_pieces_table, obstruction_heckoid, obstruction_link,
    relator_subwords_of, MatchStatus,
};
use heckoid_core::quotient::{separate_words, RepCache, RepSource, DEFAULT_DEGREE_MAX};
use heckoid_core::slope::{orbit_normalize, EndpointPolicy, OrbitClass};
use heckoid_core::verify::{
    audit_conjugacy, audit_torsion, run_check, separator_self_test, AuditOptions, SweepOptions,
};
use heckoid_core::word::parse_letters;
use heckoid_core::{
    cf_expand, cs_of_slope, parse_slope, tilde, u_word, AlternatingWord,
    CyclicAlternatingWord, Error, HeckoidContext, Letter, Slope,
};
use serde_json::json;

pub use render::{emit_report, Format};

#[derive(Parser, Debug)]
#[command(name = "heckoid", version, about = "Word combinatorics and lemma sweeps for even Heckoid groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Relator slope, as q/p or [m1,m2,...]; values above 1/2 are mirrored.
    #[arg(long, global = true, value_parser = parse_slope)]
    pub r: Option<Slope>,
    #[arg(long, global = true, default_value_t = 2)]
    pub n: u32,
    #[arg(long = "max-denominator", global = true, default_value_t = 100)]
    pub max_den: i64,
    #[arg(long, global = true, default_value_t = 3)]
    pub t_max: u32,
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_MAX)]
    pub degree_max: usize,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include Dehn traces.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Representation cache; defaults to $HECKOID_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value = "printed")]
    pub endpoint_policy: EndpointPolicy,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Candidate cap per permutation degree.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Show the context of (r, n).
    Ctx,
    /// CS(s).
    Cs {
        #[arg(value_parser = parse_slope)]
        slope: Slope,
    },
    /// Canonical continued fraction of s.
    Cf {
        #[arg(value_parser = parse_slope)]
        slope: Slope,
    },
    /// The slope whose CS is CT(s).
    Tilde {
        #[arg(value_parser = parse_slope)]
        slope: Slope,
    },
    /// I1(r;n), I2(r;n), I1(r), I2(r) and the lemma ranges.
    Intervals,
    /// u_s.
    Word {
        #[arg(value_parser = parse_slope)]
        slope: Slope,
    },
    /// Minimal piece decomposition of a word, or of every relator subword of (u_s).
    Pieces { word: String },
    /// Dehn reduction against the symmetrized relator set.
    Reduce {
        word: String,
        /// Reduce as a linear word instead of a cyclic one.
        #[arg(long)]
        linear: bool,
    },
    /// Shape obstruction for a cyclic word or slope.
    Match {
        word: String,
        /// Test against the link group instead of Hecke(r;n).
        #[arg(long)]
        link: bool,
    },
    /// Sweep one lemma over its slope range.
    Verify { lemma: Lemma },
    /// Desk-scale audits.
    Audit {
        theorem: Theorem,
        /// Number of random trials for `self-test`.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Look for a finite quotient separating u_s from u_{s'}^{±1}.
    Separate {
        #[arg(value_parser = parse_slope)]
        s: Slope,
        #[arg(value_parser = parse_slope)]
        s2: Slope,
    },
    /// Orbit representative of s under the reflections at r and infinity.
    Orbit {
        #[arg(value_parser = parse_slope)]
        slope: Slope,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    Connection,
    InsideOrbit,
    OutsideOrbit2,
    OutsideOrbit,
    PieceBound,
    Span,
}

impl Lemma {
    pub fn id(self) -> &'static str {
        match self {
            Lemma::Connection => "connection",
            Lemma::InsideOrbit => "inside-orbit",
            Lemma::OutsideOrbit2 => "outside-orbit2",
            Lemma::OutsideOrbit => "outside-orbit",
            Lemma::PieceBound => "piece-bound",
            Lemma::Span => "span",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Conjugacy,
    Torsion,
    /// Feed known-conjugate pairs to the separator.
    SelfTest,
}

/// What a command produced: rendered text and whether it passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

/// Parse `argv` (program name first), execute, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if !o.text.ends_with('\n') {
                let _ = writeln!(out);
            }
            if o.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("--r is required for this command")]
    MissingR,
    #[error(transparent)]
    Core(#[from] Error),
}

fn context(opts: &Opts, err: &mut dyn Write) -> Result<HeckoidContext, CliError> {
    let r = opts.r.ok_or(CliError::MissingR)?;
    let ctx = heckoid_core::cancel::build_context_with(r, opts.n, opts.endpoint_policy)?;
    if ctx.mirrored {
        let _ = writeln!(err, "note: r = {} > 1/2 replaced by its mirror {}", ctx.input_r, ctx.r());
    }
    Ok(ctx)
}

/// A slope, or a word in the letters a, b, A, B.
fn word_arg(s: &str) -> Result<Vec<Letter>, Error> {
    match parse_slope(s) {
        Ok(slope) => Ok(u_word(slope)?.into_letters()),
        Err(_) => parse_letters(s),
    }
}

fn cyclic_arg(s: &str) -> Result<CyclicAlternatingWord, Error> {
    match parse_slope(s) {
        Ok(slope) => cyclic_power(slope, 1),
        Err(_) => CyclicAlternatingWord::new(AlternatingWord::new(parse_letters(s)?)?),
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let o = &cli.opts;
    let f = o.format;
    let value = |j: serde_json::Value, text: String| Ok(Outcome::ok(render::value(f, &j, text)));
    match &cli.command {
        Command::Ctx => {
            let ctx = context(o, err)?;
            let (single, multi) = (ctx.params.single_block_range(), ctx.params.multi_block_range());
            let j = json!({
                "r": ctx.r(),
                "input_r": ctx.input_r,
                "mirrored": ctx.mirrored,
                "n": ctx.n(),
                "cf": ctx.params.cf().terms(),
                "k": ctx.params.k(),
                "m": ctx.m(),
                "u_r": ctx.u_r,
                "relator_length": ctx.relator.len(),
                "cs_r": ctx.cs_r,
                "decomposition": ctx.decomp,
                "affixes": ctx.decomp.affixes(),
                "intervals": ctx.intervals,
                "single_block_range": single,
                "multi_block_range": multi,
                "symmetrized_size": ctx.symmetrized.len(),
                "endpoint_policy": ctx.policy,
            });
            let text = format!(
                "r = {} = {}  (k = {}, m = {})\nn = {}\nu_r = {}\n|u_r^n| = {}\nCS(r) = {}\nS1 = {}  S2 = {}\nI1(r;n) = {}  I2(r;n) = {}\nI1(r) = {}  I2(r) = {}\nsymmetrized set: {} elements",
                ctx.r(),
                ctx.params.cf(),
                ctx.params.k(),
                ctx.m(),
                ctx.n(),
                ctx.u_r,
                ctx.relator.len(),
                ctx.cs_r,
                ctx.decomp.s1,
                ctx.decomp.s2,
                ctx.intervals.i1_rn,
                ctx.intervals.i2_rn,
                ctx.intervals.i1_r,
                ctx.intervals.i2_r,
                ctx.symmetrized.len(),
            );
            value(j, text)
        }
        Command::Cs { slope } => {
            let cs = cs_of_slope(*slope)?;
            value(json!({ "s": slope, "cs": cs }), cs.to_string())
        }
        Command::Cf { slope } => {
            let cf = cf_expand(*slope)?;
            value(json!({ "s": slope, "cf": cf.terms() }), cf.to_string())
        }
        Command::Tilde { slope } => {
            let t = tilde(*slope)?;
            value(json!({ "s": slope, "tilde": t }), t.to_string())
        }
        Command::Word { slope } => {
            let w = u_word(*slope)?;
            value(json!({ "s": slope, "word": w, "length": w.len() }), w.to_string())
        }
        Command::Intervals => {
            let ctx = context(o, err)?;
            let iv = &ctx.intervals;
            let (single, multi) = (ctx.params.single_block_range(), ctx.params.multi_block_range());
            let j = json!({
                "I1(r;n)": iv.i1_rn, "I2(r;n)": iv.i2_rn, "I1(r)": iv.i1_r, "I2(r)": iv.i2_r,
                "single_block_range": single, "multi_block_range": multi,
            });
            let text = format!(
                "I1(r;n) = {}\nI2(r;n) = {}\nI1(r) = {}\nI2(r) = {}\nsingle-block range = {}\nmulti-block range = {}",
                iv.i1_rn, iv.i2_rn, iv.i1_r, iv.i2_r, single, multi
            );
            value(j, text)
        }
        Command::Pieces { word } => {
            let ctx = context(o, err)?;
            let words: Vec<Vec<Letter>> = match parse_slope(word) {
                Ok(s) => relator_subwords_of(&cyclic_power(s, 1)?, &ctx.symmetrized)
                    .into_iter()
                    .map(|sub| sub.word.into_letters())
                    .collect(),
                Err(_) => vec![parse_letters(word)?],
            };
            let tables = words
                .iter()
                .map(|w| min_pieces_table(w, &ctx.symmetrized))
                .collect::<Result<Vec<_>, Error>>()?;
            let text = tables
                .iter()
                .map(|t| format!("{}: {} = {}", t.word, t.min_pieces(), t.pieces.join(" | ")))
                .collect::<Vec<_>>()
                .join("\n");
            let j = json!(tables
                .iter()
                .map(|t| json!({ "word": t.word, "min_pieces": t.min_pieces(), "pieces": t.pieces }))
                .collect::<Vec<_>>());
            value(j, text)
        }
        Command::Reduce { word, linear } => {
            let ctx = context(o, err)?;
            let w = word_arg(word)?;
            let trace = dehn_reduce(&w, &ctx.symmetrized, !linear);
            let shown = if trace.result.is_empty() { "1" } else { &trace.result };
            let mut text = format!("{shown}\n({} steps)", trace.steps.len());
            if o.trace {
                for s in &trace.steps {
                    text.push_str(&format!(
                        "\n{} -> {}  [{} letters at {} via {}]",
                        s.before, s.after, s.replaced, s.position, s.element
                    ));
                }
            }
            let j = if o.trace {
                serde_json::to_value(&trace).expect("serializable")
            } else {
                json!({ "input": trace.input, "cyclic": trace.cyclic, "steps": trace.steps.len(), "result": trace.result })
            };
            value(j, text)
        }
        Command::Match { word, link } => {
            let ctx = context(o, err)?;
            let v = cyclic_arg(word)?;
            let rep = if *link {
                obstruction_link(&v, ctx.r())?
            } else {
                obstruction_heckoid(&v, &ctx)
            };
            let text = match (&rep.status, &rep.witness) {
                (MatchStatus::Absent, _) => format!(
                    "ABSENT\n{}",
                    rep.certificate.as_deref().unwrap_or_default()
                ),
                (MatchStatus::Present, Some(w)) => format!(
                    "PRESENT {} in S({}) = {} at run {}",
                    w.pattern, w.subword, w.s_seq, w.run_offset
                ),
                (MatchStatus::Present, None) => "PRESENT".into(),
            };
            value(serde_json::to_value(&rep).expect("serializable"), text)
        }
        Command::Verify { lemma } => {
            let ctx = context(o, err)?;
            let opts = SweepOptions::new(o.max_den).jobs(o.jobs);
            let report = run_check(lemma.id(), &ctx, opts)?;
            Ok(Outcome {
                passed: report.passed(),
                text: emit_report(&report, f),
            })
        }
        Command::Audit { theorem, trials } => {
            let ctx = context(o, err)?;
            let opts = AuditOptions {
                max_den: o.max_den,
                t_max: o.t_max,
                degree_max: o.degree_max,
                budget: o.budget,
                cache_dir: o.cache_dir.clone(),
                jobs: o.jobs,
                trace: o.trace,
            };
            match theorem {
                Theorem::Conjugacy => {
                    let report = audit_conjugacy(&ctx, &opts)?;
                    Ok(Outcome {
                        passed: report.passed(),
                        text: emit_report(&report, f),
                    })
                }
                Theorem::Torsion => {
                    let report = audit_torsion(&ctx, &opts)?;
                    Ok(Outcome {
                        passed: report.passed(),
                        text: emit_report(&report, f),
                    })
                }
                Theorem::SelfTest => {
                    let t = separator_self_test(&ctx, &opts, *trials, o.seed)?;
                    let text = format!("{}/{} conjugate pairs left unseparated", t.trials - t.separated, t.trials);
                    Ok(Outcome {
                        passed: t.passed(),
                        text: render::value(f, &serde_json::to_value(&t).expect("serializable"), text),
                    })
                }
            }
        }
        Command::Separate { s, s2 } => {
            let ctx = context(o, err)?;
            let cache = match &o.cache_dir {
                Some(d) => Some(RepCache::new(d)?),
                None => RepCache::from_env()?,
            };
            let source = RepSource {
                cache: cache.as_ref(),
                budget: o.budget,
            };
            let (w, w2) = (u_word(*s)?, u_word(*s2)?);
            let sep = separate_words(w.letters(), w2.letters(), &ctx, o.degree_max, &source)?;
            let text = match &sep.certificate {
                Some(c) => format!(
                    "separated in degree {}: a = {:?}, b = {:?}\ncycle types {:?} vs {:?} / {:?}",
                    c.rep.degree, c.rep.a, c.rep.b, c.cycle_type_w, c.cycle_type_other, c.cycle_type_other_inv
                ),
                None => format!(
                    "no separating representation up to degree {} ({})",
                    sep.searched_to,
                    if sep.complete { "complete" } else { "budget exhausted" }
                ),
            };
            value(serde_json::to_value(&sep).expect("serializable"), text)
        }
        Command::Orbit { slope } => {
            let r = o.r.ok_or(CliError::MissingR)?;
            let class = orbit_normalize(*slope, r)?;
            let text = match class {
                OrbitClass::Representative(x) => format!("representative {x}"),
                OrbitClass::RClass => format!("orbit of r = {r}"),
                OrbitClass::InfinityClass => "orbit of 1/0".into(),
            };
            value(serde_json::to_value(class).expect("serializable"), text)
        }
    }
}
