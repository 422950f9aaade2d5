//! Alternating words in the generators `a`, `b`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::slope::Slope;

/// A generator or its inverse, printed `a`, `b`, `A` (= a⁻¹), `B` (= b⁻¹).
///
/// The derived order `a < b < A < B` fixes canonical cyclic rotations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    APos,
    BPos,
    ANeg,
    BNeg,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    A,
    B,
}

impl Letter {
    pub fn new(generator: Generator, positive: bool) -> Letter {
        match (generator, positive) {
            (Generator::A, true) => Letter::APos,
            (Generator::B, true) => Letter::BPos,
            (Generator::A, false) => Letter::ANeg,
            (Generator::B, false) => Letter::BNeg,
        }
    }

    pub fn generator(self) -> Generator {
        match self {
            Letter::APos | Letter::ANeg => Generator::A,
            Letter::BPos | Letter::BNeg => Generator::B,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Letter::APos | Letter::BPos)
    }

    pub fn sign(self) -> i8 {
        if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter::new(self.generator(), !self.is_positive())
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::APos => 'a',
            Letter::BPos => 'b',
            Letter::ANeg => 'A',
            Letter::BNeg => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            'a' => Letter::APos,
            'b' => Letter::BPos,
            'A' => Letter::ANeg,
            'B' => Letter::BNeg,
            _ => return None,
        })
    }
}

/// Parse a word over `{a, b, A, B}` with no alternation requirement.
/// Whitespace is ignored.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            Letter::from_char(c).ok_or_else(|| Error::Parse {
                what: "word",
                input: s.to_string(),
            })
        })
        .collect()
}

pub fn letters_to_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.as_char()).collect()
}

/// Inverse of an arbitrary word: reversed, each letter inverted.
pub fn invert_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

fn alternates(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0].generator() != p[1].generator())
}

/// A word whose letters alternate between the generators `a` and `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlternatingWord(Vec<Letter>);

impl AlternatingWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if alternates(&letters) {
            Ok(AlternatingWord(letters))
        } else {
            Err(Error::NotAlternating)
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Letters `start..start+len`, read cyclically.
    pub fn cyclic_slice(&self, start: usize, len: usize) -> Vec<Letter> {
        let n = self.0.len();
        (0..len).map(|i| self.0[(start + i) % n]).collect()
    }

    /// Exponent sums `(a, b)`.
    pub fn exponent_sums(&self) -> (i64, i64) {
        self.0.iter().fold((0, 0), |(x, y), l| match l.generator() {
            Generator::A => (x + l.sign() as i64, y),
            Generator::B => (x, y + l.sign() as i64),
        })
    }
}

impl Deref for AlternatingWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for AlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&letters_to_string(&self.0))
    }
}

impl fmt::Debug for AlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for AlternatingWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlternatingWord::new(parse_letters(s)?)
    }
}

impl Serialize for AlternatingWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AlternatingWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The word `u_s` for `s = q/p ∈ [0,1]`: length `2p`, letters alternate
/// `a, b, a, ...`, and letter `i` carries the sign `(-1)^⌊iq/p⌋`.
pub fn u_word(s: Slope) -> Result<AlternatingWord> {
    s.require_unit()?;
    let (q, p) = (s.numer() as u128, s.denom() as u128);
    let letters = (0..2 * p)
        .map(|i| {
            let generator = if i % 2 == 0 { Generator::A } else { Generator::B };
            Letter::new(generator, (i * q / p) % 2 == 0)
        })
        .collect();
    Ok(AlternatingWord(letters))
}

pub fn invert(w: &AlternatingWord) -> AlternatingWord {
    AlternatingWord(invert_letters(&w.0))
}

/// `n`-fold concatenation of a cyclically alternating word.
pub fn power(w: &AlternatingWord, n: usize) -> Result<AlternatingWord> {
    if w.len() % 2 != 0 {
        return Err(Error::OddLength(w.len()));
    }
    Ok(AlternatingWord(w.0.repeat(n)))
}

/// An alternating word of even length considered up to rotation.
///
/// The stored representative keeps the rotation it was built with, so
/// positions reported against it are meaningful; equality, hashing and
/// display use the least rotation.
#[derive(Clone)]
pub struct CyclicAlternatingWord {
    rep: AlternatingWord,
}

impl CyclicAlternatingWord {
    pub fn new(rep: AlternatingWord) -> Result<Self> {
        if rep.len() % 2 != 0 {
            return Err(Error::OddLength(rep.len()));
        }
        Ok(CyclicAlternatingWord { rep })
    }

    pub fn of_slope(s: Slope) -> Result<Self> {
        Self::new(u_word(s)?)
    }

    pub fn representative(&self) -> &AlternatingWord {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn inverse(&self) -> CyclicAlternatingWord {
        CyclicAlternatingWord {
            rep: invert(&self.rep),
        }
    }

    /// Least rotation under `a < b < A < B`.
    pub fn canonical(&self) -> Vec<Letter> {
        let w = self.rep.letters();
        let n = w.len();
        if n == 0 {
            return Vec::new();
        }
        let best = (0..n)
            .min_by(|&i, &j| {
                (0..n)
                    .map(|t| w[(i + t) % n])
                    .cmp((0..n).map(|t| w[(j + t) % n]))
            })
            .unwrap();
        self.rep.cyclic_slice(best, n)
    }
}

impl PartialEq for CyclicAlternatingWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl Eq for CyclicAlternatingWord {}

impl std::hash::Hash for CyclicAlternatingWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Display for CyclicAlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", letters_to_string(&self.canonical()))
    }
}

impl fmt::Debug for CyclicAlternatingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CyclicAlternatingWord {
    type Err = Error;

    /// Accepts `w` or `(w)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t);
        let w: AlternatingWord = inner.parse()?;
        if w.len() >= 2 && w[0].generator() == w[w.len() - 1].generator() {
            return Err(Error::NotAlternating);
        }
        CyclicAlternatingWord::new(w)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Host,
    Inverse,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Occurrence {
    pub start: usize,
    pub orientation: Orientation,
}

/// Cyclic occurrences of `pattern` in `host` and in its inverse.
///
/// Positions index the stored representative of `host` (resp. its inverse).
/// Host-orientation matches come first, each group in ascending position.
pub fn occurrences(pattern: &AlternatingWord, host: &CyclicAlternatingWord) -> Vec<Occurrence> {
    let n = host.len();
    if pattern.is_empty() || pattern.len() > n {
        return Vec::new();
    }
    let inv = host.inverse();
    let mut out = Vec::new();
    for (orientation, word) in [(Orientation::Host, host.representative()), (Orientation::Inverse, inv.representative())] {
        for start in 0..n {
            if pattern.iter().enumerate().all(|(i, l)| word[(start + i) % n] == *l) {
                out.push(Occurrence { start, orientation });
            }
        }
    }
    out
}
