//! One-sided nontriviality certificates from the shape of relator subwords,
//! and the factorization `w = v^d v1` by a rotation `v` of `base^{±1}`.

use serde::Serialize;

use super::pieces::{common_subword_lengths, maximal_starts};
use super::{HeckoidContext, SymmetrizedSet};
use crate::error::Result;
use crate::runs::{match_linear, s_seq, sr_decomposition, RunSeq, SRDecomp, Template, TermMatcher};
use crate::slope::Slope;
use crate::word::{
    invert, letters_to_string, power, u_word, AlternatingWord, CyclicAlternatingWord, Letter,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatchStatus {
    Present,
    Absent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeWitness {
    /// Start of the maximal relator subword in `v`.
    pub start: usize,
    pub subword: String,
    pub s_seq: RunSeq,
    /// Index into `s_seq` where the shape begins.
    pub run_offset: usize,
    pub pattern: String,
}

/// Outcome of a shape search. `Absent` certifies that `v` is nontrivial in
/// the named group; `Present` certifies nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub group: String,
    pub status: MatchStatus,
    pub patterns: Vec<String>,
    pub witness: Option<ShapeWitness>,
    pub certificate: Option<String>,
}

/// `(block, ℓ)`: the first run may be the tail of a longer run, the last is any.
fn forward(block: &[u32]) -> Template {
    let mut t = vec![TermMatcher::AtLeast(block[0])];
    t.extend(block[1..].iter().map(|&x| TermMatcher::Exact(x)));
    t.push(TermMatcher::Any);
    Template(t)
}

/// `(ℓ, block)`: mirror image of [`forward`].
fn backward(block: &[u32]) -> Template {
    let mut t = vec![TermMatcher::Any];
    t.extend(block[..block.len() - 1].iter().map(|&x| TermMatcher::Exact(x)));
    t.push(TermMatcher::AtLeast(block[block.len() - 1]));
    Template(t)
}

fn repeated(d: &SRDecomp, pairs: usize, s1_first: bool) -> Vec<u32> {
    let (x, y) = if s1_first { (&d.s1, &d.s2) } else { (&d.s2, &d.s1) };
    let pair = RunSeq::concat([x, y]);
    pair.terms().repeat(pairs)
}

fn search(
    v: &CyclicAlternatingWord,
    set: &SymmetrizedSet,
    templates: &[Template],
    group: String,
) -> MatchReport {
    let lengths = common_subword_lengths(v, set);
    let rep = v.representative();
    let mut witness = None;
    'outer: for start in maximal_starts(&lengths) {
        let word = AlternatingWord::new(rep.cyclic_slice(start, lengths[start]))
            .expect("subword of an alternating cyclic word");
        let seq = s_seq(&word).expect("nonempty");
        for t in templates {
            if let Some(run_offset) = match_linear(seq.terms(), t) {
                witness = Some(ShapeWitness {
                    start,
                    subword: word.to_string(),
                    s_seq: seq,
                    run_offset,
                    pattern: t.to_string(),
                });
                break 'outer;
            }
        }
    }
    let status = if witness.is_some() {
        MatchStatus::Present
    } else {
        MatchStatus::Absent
    };
    let certificate = (status == MatchStatus::Absent).then(|| format!("{v} != 1 in {group}"));
    MatchReport {
        group,
        status,
        patterns: templates.iter().map(Template::to_string).collect(),
        witness,
        certificate,
    }
}

/// Does `(v)` contain a subword `w` of `(u_r^{±1})` with `S(w) = (S1, S2, ℓ)`
/// or `(ℓ, S2, S1)`? If not, `v` is nontrivial in the link group.
pub fn obstruction_link(v: &CyclicAlternatingWord, r: Slope) -> Result<MatchReport> {
    let d = sr_decomposition(r)?;
    let u = u_word(r)?;
    let set = SymmetrizedSet::new(u.letters(), u.len());
    let templates = [
        forward(&repeated(&d, 1, true)),
        backward(&repeated(&d, 1, false)),
    ];
    Ok(search(v, &set, &templates, format!("G(K({r}))")))
}

/// Does `(v)` contain a subword `w` of `(u_r^{±n})` with
/// `S(w) = ((2n-1)<S1,S2>, ℓ)` or `(ℓ, (2n-1)<S2,S1>)`? If not, `v` is
/// nontrivial in `Hecke(r;n)`.
pub fn obstruction_heckoid(v: &CyclicAlternatingWord, ctx: &HeckoidContext) -> MatchReport {
    let pairs = 2 * ctx.n() as usize - 1;
    let templates = [
        forward(&repeated(&ctx.decomp, pairs, true)),
        backward(&repeated(&ctx.decomp, pairs, false)),
    ];
    search(
        v,
        &ctx.symmetrized,
        &templates,
        format!("Hecke({};{})", ctx.r(), ctx.n()),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerDecomp {
    pub d: usize,
    /// The rotation of `base` (or of its inverse) that `w` repeats.
    pub v: String,
    pub v1: String,
    pub rotation: usize,
    pub inverse: bool,
}

/// Write `w = v^d v1` with `v` a rotation of `base^{±1}` and `v1` a proper
/// prefix of `v`, i.e. `w` is a prefix of `v^∞`. `None` when no rotation
/// fits or `d` would be 0. Rotations of `base` are tried before those of
/// its inverse, each in increasing order.
pub fn power_decompose(w: &[Letter], base: &AlternatingWord) -> Option<PowerDecomp> {
    let p = base.len();
    if p < 2 || w.len() < p {
        return None;
    }
    let inv = invert(base);
    for (inverse, b) in [(false, base), (true, &inv)] {
        for rotation in 0..p {
            let fits = w.iter().enumerate().all(|(i, &l)| b[(rotation + i) % p] == l);
            if fits {
                let v: Vec<Letter> = (0..p).map(|i| b[(rotation + i) % p]).collect();
                let d = w.len() / p;
                return Some(PowerDecomp {
                    d,
                    v: letters_to_string(&v),
                    v1: letters_to_string(&w[d * p..]),
                    rotation,
                    inverse,
                });
            }
        }
    }
    None
}

/// `(u_s)^t` as a cyclic word.
pub fn cyclic_power(s: Slope, t: usize) -> Result<CyclicAlternatingWord> {
    CyclicAlternatingWord::new(power(&u_word(s)?, t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cancel::build_context;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn link_obstruction_examples() {
        let r = sl("2/5");
        let rep = obstruction_link(&cyclic_power(r, 1).unwrap(), r).unwrap();
        assert_eq!(rep.status, MatchStatus::Present);
        assert!(rep.certificate.is_none());

        let rep = obstruction_link(&cyclic_power(sl("1/3"), 1).unwrap(), r).unwrap();
        assert_eq!(rep.status, MatchStatus::Absent);
        assert!(rep.certificate.unwrap().contains("G(K(2/5))"));

        let rep = obstruction_link(&cyclic_power(Slope::ZERO, 1).unwrap(), r).unwrap();
        assert_eq!(rep.status, MatchStatus::Absent);
    }

    #[test]
    fn heckoid_obstruction_examples() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let rep = obstruction_heckoid(&ctx.relator_cyclic(), &ctx);
        assert_eq!(rep.status, MatchStatus::Present);
        assert_eq!(rep.patterns, ["(>=3,2,3,2,3,2,?)", "(?,2,3,2,3,2,>=3)"]);

        for t in [1, 3] {
            let rep = obstruction_heckoid(&cyclic_power(sl("3/8"), t).unwrap(), &ctx);
            assert_eq!(rep.status, MatchStatus::Absent, "t={t}");
            assert!(rep.certificate.unwrap().contains("Hecke(2/5;2)"));
        }
    }

    #[test]
    fn power_decompose_examples() {
        let u = u_word(sl("2/5")).unwrap();
        let mut w = power(&u, 2).unwrap().into_letters();
        w.extend(&u.letters()[..4]);
        let pd = power_decompose(&w, &u).unwrap();
        assert_eq!((pd.d, pd.v1.len(), pd.rotation, pd.inverse), (2, 4, 0, false));

        assert_eq!(power_decompose(u_word(sl("3/8")).unwrap().letters(), &u), None);

        let inv = invert(&u);
        let rot: Vec<Letter> = (0..30).map(|i| inv[(i + 3) % 10]).collect();
        let pd = power_decompose(&rot, &u).unwrap();
        assert_eq!((pd.d, pd.v1.as_str(), pd.rotation, pd.inverse), (3, "", 3, true));

        assert_eq!(power_decompose(&u.letters()[..5], &u), None);
    }
}
