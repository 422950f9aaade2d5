//! Contiguous cyclic block patterns over run sequences.
//!
//! Grammar (whitespace or commas separate atoms):
//!
//! ```text
//! seq  := atom*
//! atom := NUM | ">=" NUM | "?" | NAME | NUM "*" "(" seq ")" | "(" seq ")"
//! ```
//!
//! `NAME` refers to a bound run sequence such as `S1` or `S2e`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{CyclicRunSeq, RunSeq, SRDecomp};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PatternAtom {
    Exact(u32),
    AtLeast(u32),
    AnyPositive,
    Block(String),
    Repeat(usize, PatternExpr),
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PatternExpr(pub Vec<PatternAtom>);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TermMatcher {
    Exact(u32),
    AtLeast(u32),
    Any,
}

impl TermMatcher {
    pub fn accepts(self, v: u32) -> bool {
        match self {
            TermMatcher::Exact(x) => v == x,
            TermMatcher::AtLeast(x) => v >= x,
            TermMatcher::Any => v >= 1,
        }
    }
}

/// A fully expanded pattern: one matcher per term.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Template(pub Vec<TermMatcher>);

impl Template {
    pub fn exact(terms: &[u32]) -> Template {
        Template(terms.iter().map(|&t| TermMatcher::Exact(t)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match m {
                TermMatcher::Exact(v) => write!(f, "{v}")?,
                TermMatcher::AtLeast(v) => write!(f, ">={v}")?,
                TermMatcher::Any => f.write_str("?")?,
            }
        }
        f.write_str(")")
    }
}

/// Named run sequences available to `Block` atoms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Bindings(BTreeMap<String, RunSeq>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    /// `S1, S2, S1b, S1e, S2b, S2e` and the scalars `m`, `m1` (= m+1) as one-term blocks.
    pub fn from_decomp(d: &SRDecomp) -> Self {
        let a = d.affixes();
        let mut b = Bindings::new();
        b.insert("S1", d.s1.clone());
        b.insert("S2", d.s2.clone());
        b.insert("S1b", a.s1b);
        b.insert("S1e", a.s1e);
        b.insert("S2b", a.s2b);
        b.insert("S2e", a.s2e);
        b.insert("m", RunSeq::from_vec(vec![d.m]));
        b.insert("m1", RunSeq::from_vec(vec![d.m + 1]));
        b
    }

    pub fn insert(&mut self, name: &str, seq: RunSeq) {
        self.0.insert(name.to_string(), seq);
    }

    pub fn get(&self, name: &str) -> Option<&RunSeq> {
        self.0.get(name)
    }
}

impl PatternExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn exact(mut self, v: u32) -> Self {
        self.0.push(PatternAtom::Exact(v));
        self
    }

    pub fn at_least(mut self, v: u32) -> Self {
        self.0.push(PatternAtom::AtLeast(v));
        self
    }

    pub fn any(mut self) -> Self {
        self.0.push(PatternAtom::AnyPositive);
        self
    }

    pub fn block(mut self, name: &str) -> Self {
        self.0.push(PatternAtom::Block(name.to_string()));
        self
    }

    pub fn repeat(mut self, count: usize, sub: PatternExpr) -> Self {
        self.0.push(PatternAtom::Repeat(count, sub));
        self
    }

    pub fn expand(&self, bindings: &Bindings) -> Result<Template> {
        let mut out = Vec::new();
        self.expand_into(bindings, &mut out)?;
        Ok(Template(out))
    }

    fn expand_into(&self, bindings: &Bindings, out: &mut Vec<TermMatcher>) -> Result<()> {
        for atom in &self.0 {
            match atom {
                PatternAtom::Exact(v) => out.push(TermMatcher::Exact(*v)),
                PatternAtom::AtLeast(v) => out.push(TermMatcher::AtLeast(*v)),
                PatternAtom::AnyPositive => out.push(TermMatcher::Any),
                PatternAtom::Block(name) => {
                    let seq = bindings
                        .get(name)
                        .ok_or_else(|| Error::UnboundBlock(name.clone()))?;
                    out.extend(seq.terms().iter().map(|&t| TermMatcher::Exact(t)));
                }
                PatternAtom::Repeat(count, sub) => {
                    for _ in 0..*count {
                        sub.expand_into(bindings, out)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PatternExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match atom {
                PatternAtom::Exact(v) => write!(f, "{v}")?,
                PatternAtom::AtLeast(v) => write!(f, ">={v}")?,
                PatternAtom::AnyPositive => f.write_str("?")?,
                PatternAtom::Block(name) => f.write_str(name)?,
                PatternAtom::Repeat(n, sub) => write!(f, "{n}*({sub})")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Num(u64),
    Ge,
    Any,
    Star,
    Open,
    Close,
    Name(String),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let err = |msg: &str| Error::Pattern(format!("{msg} in {s:?}"));
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() || c == ',' => i += 1,
            '?' => {
                out.push(Token::Any);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            '>' if chars.get(i + 1) == Some(&'=') => {
                out.push(Token::Ge);
                i += 2;
            }
            '≥' => {
                out.push(Token::Ge);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(text.parse().map_err(|_| err("number too large"))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Name(chars[start..i].iter().collect()));
            }
            _ => return Err(err(&format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Pattern(format!("{msg} at token {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn value(&self, n: u64) -> Result<u32> {
        match u32::try_from(n) {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(self.err("run values must be positive")),
        }
    }

    fn seq(&mut self, nested: bool) -> Result<PatternExpr> {
        let mut atoms = Vec::new();
        loop {
            match self.peek() {
                None if nested => return Err(self.err("missing ')'")),
                None => break,
                Some(Token::Close) if nested => {
                    self.pos += 1;
                    break;
                }
                Some(Token::Close) => return Err(self.err("unbalanced ')'")),
                _ => atoms.extend(self.atom()?),
            }
        }
        Ok(PatternExpr(atoms))
    }

    fn atom(&mut self) -> Result<Vec<PatternAtom>> {
        match self.next() {
            Some(Token::Num(n)) => {
                if self.peek() == Some(&Token::Star) {
                    self.pos += 1;
                    if self.next() != Some(Token::Open) {
                        return Err(self.err("expected '(' after '*'"));
                    }
                    let sub = self.seq(true)?;
                    let count = usize::try_from(n).map_err(|_| self.err("repeat count too large"))?;
                    Ok(vec![PatternAtom::Repeat(count, sub)])
                } else {
                    Ok(vec![PatternAtom::Exact(self.value(n)?)])
                }
            }
            Some(Token::Ge) => match self.next() {
                Some(Token::Num(n)) => Ok(vec![PatternAtom::AtLeast(self.value(n)?)]),
                _ => Err(self.err("expected a number after '>='")),
            },
            Some(Token::Any) => Ok(vec![PatternAtom::AnyPositive]),
            Some(Token::Name(name)) => Ok(vec![PatternAtom::Block(name)]),
            Some(Token::Open) => Ok(self.seq(true)?.0),
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl FromStr for PatternExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        Parser {
            tokens: &tokens,
            pos: 0,
            src: s,
        }
        .seq(false)
    }
}

/// First rotation of `host` that starts with `pat`, or `None`.
///
/// Templates longer than the host never match.
pub fn match_pattern(host: &CyclicRunSeq, pat: &Template) -> Option<usize> {
    let n = host.len();
    let m = pat.len();
    if m == 0 || m > n {
        return None;
    }
    let t = host.terms();
    (0..n).find(|&start| {
        pat.0
            .iter()
            .enumerate()
            .all(|(i, mt)| mt.accepts(t[(start + i) % n]))
    })
}

/// First position of a linear (non-cyclic) sequence where `pat` matches.
pub fn match_linear(seq: &[u32], pat: &Template) -> Option<usize> {
    let m = pat.len();
    if m == 0 || m > seq.len() {
        return None;
    }
    seq.windows(m)
        .position(|w| pat.0.iter().zip(w).all(|(mt, &v)| mt.accepts(v)))
}

/// Number of rotations of `host` that start with `block`.
pub fn count_block_occurrences(host: &CyclicRunSeq, block: &[u32]) -> usize {
    let n = host.len();
    if block.is_empty() || block.len() > n {
        return 0;
    }
    let t = host.terms();
    (0..n)
        .filter(|&start| block.iter().enumerate().all(|(i, &b)| t[(start + i) % n] == b))
        .count()
}
