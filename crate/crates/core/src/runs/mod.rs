//! Run-length sequences of sign patterns: `S(w)`, `CS(s)`, `CT(s)`.

mod decomp;
mod pattern;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::slope::{cf_expand, Slope};
use crate::word::{u_word, AlternatingWord, CyclicAlternatingWord};

pub use decomp::{sr_decomposition, Affixes, SRDecomp};
pub use pattern::{
    count_block_occurrences, match_linear, match_pattern, Bindings, PatternAtom, PatternExpr, Template, TermMatcher,
};

/// A linear sequence of positive run lengths, printed `(3,2,3)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct RunSeq(Vec<u32>);

impl RunSeq {
    pub fn new(terms: Vec<u32>) -> Result<Self> {
        if terms.contains(&0) {
            return Err(Error::NonPositiveTerm);
        }
        Ok(RunSeq(terms))
    }

    pub(crate) fn from_vec(terms: Vec<u32>) -> Self {
        debug_assert!(!terms.contains(&0));
        RunSeq(terms)
    }

    pub fn terms(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&t| t as u64).sum()
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Drop the first term; empty stays empty.
    pub fn strip_first(&self) -> RunSeq {
        RunSeq(self.0.iter().skip(1).copied().collect())
    }

    /// Drop the last term; empty stays empty.
    pub fn strip_last(&self) -> RunSeq {
        let n = self.0.len().saturating_sub(1);
        RunSeq(self.0[..n].to_vec())
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a RunSeq>) -> RunSeq {
        RunSeq(parts.into_iter().flat_map(|p| p.0.iter().copied()).collect())
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, open: &str, terms: &[u32], close: &str) -> fmt::Result {
    f.write_str(open)?;
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{t}")?;
    }
    f.write_str(close)
}

fn parse_terms(s: &str, what: &'static str, brackets: &[(&str, &str)]) -> Result<Vec<u32>> {
    let bad = || Error::Parse {
        what,
        input: s.to_string(),
    };
    let t = s.trim();
    let inner = brackets
        .iter()
        .find_map(|(o, c)| t.strip_prefix(o).and_then(|x| x.strip_suffix(c)))
        .unwrap_or(t);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let terms = inner
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    if terms.contains(&0) {
        return Err(Error::NonPositiveTerm);
    }
    Ok(terms)
}

impl fmt::Display for RunSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "(", &self.0, ")")
    }
}

impl FromStr for RunSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_terms(s, "run sequence", &[("(", ")")]).map(RunSeq)
    }
}

impl Serialize for RunSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RunSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A run sequence up to rotation, printed `⟨3,2,3,2⟩`.
///
/// The stored rotation is kept for printing; equality and hashing compare
/// least rotations.
#[derive(Clone, Debug)]
pub struct CyclicRunSeq(Vec<u32>);

impl CyclicRunSeq {
    pub fn new(terms: Vec<u32>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyWord);
        }
        if terms.contains(&0) {
            return Err(Error::NonPositiveTerm);
        }
        Ok(CyclicRunSeq(terms))
    }

    /// The rotation this sequence was built with.
    pub fn terms(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&t| t as u64).sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i % self.0.len()]
    }

    /// `t`-fold repetition: the sequence of the `t`-th power of the word.
    /// A single run `⟨l⟩` stays a single run `⟨t l⟩`.
    pub fn repeat(&self, t: usize) -> CyclicRunSeq {
        if self.0.len() == 1 {
            CyclicRunSeq(vec![self.0[0] * t as u32])
        } else {
            CyclicRunSeq(self.0.repeat(t))
        }
    }

    pub fn rotation(&self, start: usize) -> Vec<u32> {
        let n = self.0.len();
        (0..n).map(|i| self.0[(start + i) % n]).collect()
    }

    pub fn canonical(&self) -> Vec<u32> {
        let n = self.0.len();
        let best = (0..n)
            .min_by(|&i, &j| {
                (0..n)
                    .map(|t| self.0[(i + t) % n])
                    .cmp((0..n).map(|t| self.0[(j + t) % n]))
            })
            .unwrap_or(0);
        self.rotation(best)
    }

    pub fn values(&self) -> std::collections::BTreeSet<u32> {
        self.0.iter().copied().collect()
    }
}

impl PartialEq for CyclicRunSeq {
    fn eq(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.canonical() == other.canonical()
    }
}

impl Eq for CyclicRunSeq {}

impl std::hash::Hash for CyclicRunSeq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Display for CyclicRunSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, "⟨", &self.0, "⟩")
    }
}

impl FromStr for CyclicRunSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CyclicRunSeq::new(parse_terms(s, "cyclic run sequence", &[("⟨", "⟩"), ("<", ">")])?)
    }
}

impl Serialize for CyclicRunSeq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CyclicRunSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Linear run lengths of the sign pattern, left to right.
pub fn s_seq(w: &AlternatingWord) -> Result<RunSeq> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut runs = Vec::new();
    let mut len = 1u32;
    for pair in w.windows(2) {
        if pair[0].is_positive() == pair[1].is_positive() {
            len += 1;
        } else {
            runs.push(len);
            len = 1;
        }
    }
    runs.push(len);
    Ok(RunSeq(runs))
}

/// Cyclic run lengths of the sign pattern.
///
/// Reading starts at the first letter that begins a run, so for `u_s` with
/// `s > 0` the rotation starts at letter 0.
pub fn cs_of_word(w: &CyclicAlternatingWord) -> Result<CyclicRunSeq> {
    let letters = w.representative().letters();
    let n = letters.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let sign = |i: usize| letters[i % n].is_positive();
    let start = (0..n).find(|&i| sign(i) != sign(i + n - 1));
    let Some(start) = start else {
        return Ok(CyclicRunSeq(vec![n as u32]));
    };
    let mut runs = Vec::new();
    let mut len = 1u32;
    for i in start + 1..start + n {
        if sign(i) == sign(i - 1) {
            len += 1;
        } else {
            runs.push(len);
            len = 1;
        }
    }
    runs.push(len);
    Ok(CyclicRunSeq(runs))
}

pub fn cs_of_slope(s: Slope) -> Result<CyclicRunSeq> {
    cs_of_word(&CyclicAlternatingWord::new(u_word(s)?)?)
}

/// `CT(s)`: for `s = [l1, l2, ...]` with `c = l1`, the cyclic lengths of the
/// maximal blocks of `c+1`'s in `CS(s)` when `l2 = 1`, and of `c`'s when
/// `l2 >= 2`. For `s = [c]` the result is `⟨2⟩`.
pub fn ct_of_slope(s: Slope) -> Result<CyclicRunSeq> {
    s.require_unit()?;
    if s == Slope::ZERO || s == Slope::ONE {
        return Err(Error::OutOfRange {
            value: s.to_string(),
            expected: "(0,1)",
        });
    }
    let cf = cf_expand(s)?;
    let l = cf.terms();
    let c = u32::try_from(l[0]).map_err(|_| Error::Overflow)?;
    let cs = cs_of_slope(s)?;
    if cs.0.iter().any(|&t| t != c && t != c + 1) {
        return Err(Error::NotTwoValued {
            slope: s.to_string(),
            cs: cs.to_string(),
            c,
        });
    }
    if l.len() == 1 {
        return Ok(CyclicRunSeq(vec![2]));
    }
    let target = if l[1] == 1 { c + 1 } else { c };
    let terms = &cs.0;
    let n = terms.len();
    let at = |i: usize| terms[i % n] == target;
    let Some(start) = (0..n).find(|&i| at(i) && !at(i + n - 1)) else {
        // One value throughout: the sequence cannot be split into blocks.
        return Err(Error::NotTwoValued {
            slope: s.to_string(),
            cs: cs.to_string(),
            c,
        });
    };
    let mut blocks = Vec::new();
    let mut len = 0u32;
    for i in start..start + n {
        if at(i) {
            len += 1;
        } else if len > 0 {
            blocks.push(len);
            len = 0;
        }
    }
    if len > 0 {
        blocks.push(len);
    }
    Ok(CyclicRunSeq(blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slope::{farey_sequence, tilde};

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    fn cyc(s: &str) -> CyclicRunSeq {
        s.parse().unwrap()
    }

    #[test]
    fn cs_examples() {
        assert_eq!(cs_of_slope(Slope::ZERO).unwrap().to_string(), "⟨2⟩");
        assert_eq!(cs_of_slope(Slope::ONE).unwrap().to_string(), "⟨1,1⟩");
        assert_eq!(cs_of_slope(sl("2/5")).unwrap().to_string(), "⟨3,2,3,2⟩");
        assert_eq!(
            cs_of_slope(sl("5/13")).unwrap().to_string(),
            "⟨3,3,2,3,2,3,3,2,3,2⟩"
        );
        assert_eq!(cs_of_slope(sl("3/8")).unwrap().to_string(), "⟨3,3,2,3,3,2⟩");
        assert_eq!(cs_of_slope(sl("4/11")).unwrap(), cyc("⟨3,3,3,2,3,3,3,2⟩"));
        let w: CyclicAlternatingWord = "(ab)".parse().unwrap();
        assert_eq!(cs_of_word(&w).unwrap(), cyc("⟨2⟩"));
    }

    #[test]
    fn cs_rotation_starts_at_letter_zero() {
        assert_eq!(cs_of_slope(sl("5/12")).unwrap().terms(), [3, 2, 3, 2, 2, 3, 2, 3, 2, 2]);
    }

    #[test]
    fn s_seq_examples() {
        let w: AlternatingWord = "abaBAb".parse().unwrap();
        assert_eq!(s_seq(&w).unwrap().to_string(), "(3,2,1)");
        assert_eq!(s_seq(&"a".parse().unwrap()).unwrap().to_string(), "(1)");
        assert_eq!(s_seq(&u_word(sl("1/2")).unwrap()).unwrap().to_string(), "(2,2)");
        assert_eq!(s_seq(&AlternatingWord::default()), Err(Error::EmptyWord));
    }

    #[test]
    fn ct_examples() {
        assert_eq!(ct_of_slope(sl("3/8")).unwrap(), cyc("⟨2,2⟩"));
        assert_eq!(ct_of_slope(sl("2/5")).unwrap(), cyc("⟨1,1⟩"));
        assert_eq!(ct_of_slope(sl("5/12")).unwrap(), cyc("⟨2,1,2,1⟩"));
        assert_eq!(ct_of_slope(sl("1/4")).unwrap(), cyc("⟨2⟩"));
        assert!(ct_of_slope(Slope::ZERO).is_err());
        assert!(ct_of_slope(Slope::ONE).is_err());
    }

    #[test]
    fn cyclic_equality_and_parsing() {
        assert_eq!(cyc("⟨2,3,2,3⟩"), cyc("<3,2,3,2>"));
        assert_ne!(cyc("⟨3,3,2⟩"), cyc("⟨3,2,2⟩"));
        assert!("⟨⟩".parse::<CyclicRunSeq>().is_err());
        assert!("⟨0,1⟩".parse::<CyclicRunSeq>().is_err());
        assert_eq!(cyc("⟨2⟩").repeat(3), cyc("⟨6⟩"));
        assert_eq!(cyc("⟨3,2⟩").repeat(2).terms(), [3, 2, 3, 2]);
        let r: RunSeq = "(3,2,3)".parse().unwrap();
        assert_eq!(r.strip_first().to_string(), "(2,3)");
        assert_eq!(r.strip_last().to_string(), "(3,2)");
    }

    #[test]
    fn cs_sums_and_values() {
        for s in farey_sequence(120) {
            let cs = cs_of_slope(s).unwrap();
            assert_eq!(cs.sum(), 2 * s.denom() as u64);
            if s > Slope::ZERO && s < Slope::ONE {
                let c = cf_expand(s).unwrap().terms()[0] as u32;
                assert!(cs.terms().iter().all(|&t| t == c || t == c + 1), "{s}");
                assert_eq!(cs.len() % 2, 0);
            }
        }
    }

    #[test]
    fn fundamental_identity_up_to_200() {
        let mut checked = 0;
        for s in farey_sequence(200) {
            if s == Slope::ZERO || s == Slope::ONE {
                continue;
            }
            let ct = ct_of_slope(s).unwrap();
            assert_eq!(cs_of_slope(tilde(s).unwrap()).unwrap(), ct, "s = {s}");
            checked += 1;
        }
        assert_eq!(checked, 12231);
    }
}
