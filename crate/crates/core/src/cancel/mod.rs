//! The symmetrized relator set of `u_r^n`, pieces, Dehn reduction and the
//! triviality obstructions.

mod dehn;
mod obstruction;
mod pieces;

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::runs::{cs_of_word, sr_decomposition, CyclicRunSeq, SRDecomp};
use crate::slope::{
    base_intervals, heckoid_intervals_with, mirror, EndpointPolicy, HeckoidParams, Slope,
    SlopeInterval,
};
use crate::word::{invert_letters, power, u_word, AlternatingWord, CyclicAlternatingWord, Letter};

pub use dehn::{cyclic_reduce, dehn_reduce, free_reduce, DehnStep, DehnTrace};
pub use obstruction::{
    cyclic_power, obstruction_heckoid, obstruction_link, power_decompose, MatchReport, MatchStatus, PowerDecomp,
    ShapeWitness,
};
pub use pieces::{
    is_piece, min_pieces, min_pieces_table, relator_subwords_of, PieceTable, RelatorSubword,
};

/// All rotations of a relator and of its inverse, deduplicated and sorted.
#[derive(Clone, Debug)]
pub struct SymmetrizedSet {
    elements: Vec<Vec<Letter>>,
    period: usize,
}

impl SymmetrizedSet {
    /// `relator` must be cyclically reduced; `period` is the length of its root.
    pub fn new(relator: &[Letter], period: usize) -> Self {
        let len = relator.len();
        let inverse = invert_letters(relator);
        let mut elements: Vec<Vec<Letter>> = [relator, &inverse[..]]
            .iter()
            .flat_map(|w| (0..len).map(move |i| w[i..].iter().chain(&w[..i]).copied().collect()))
            .collect();
        elements.sort();
        elements.dedup();
        SymmetrizedSet { elements, period }
    }

    pub fn elements(&self) -> &[Vec<Letter>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Length of every element.
    pub fn word_len(&self) -> usize {
        self.elements.first().map_or(0, Vec::len)
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(w)).is_ok()
    }

    /// Restrict `range`, whose elements share a prefix of length `depth`, to
    /// those whose letter at `depth` is `c`.
    pub(crate) fn narrow(&self, range: Range<usize>, depth: usize, c: Letter) -> Range<usize> {
        let slice = &self.elements[range.clone()];
        let lo = slice.partition_point(|e| e[depth] < c);
        let hi = slice.partition_point(|e| e[depth] <= c);
        range.start + lo..range.start + hi
    }

    /// Indices of the elements having `w` as a prefix.
    pub fn prefix_range(&self, w: &[Letter]) -> Range<usize> {
        if w.len() > self.word_len() {
            return 0..0;
        }
        let mut range = 0..self.elements.len();
        for (d, &c) in w.iter().enumerate() {
            range = self.narrow(range, d, c);
            if range.is_empty() {
                break;
            }
        }
        range
    }

    pub fn prefix_count(&self, w: &[Letter]) -> usize {
        self.prefix_range(w).len()
    }

    /// `w` is a subword of the cyclic words `(R)`, `(R⁻¹)`.
    pub fn is_subword(&self, w: &[Letter]) -> bool {
        !self.prefix_range(w).is_empty()
    }

    /// Longest `l <= cap` such that the `l` letters read from `at(0), at(1), ...`
    /// satisfy `keep(range)` for the range of elements they prefix; returns
    /// `l` and the final range.
    pub(crate) fn longest_prefix_by(
        &self,
        at: impl Fn(usize) -> Letter,
        cap: usize,
        keep: impl Fn(&Range<usize>) -> bool,
    ) -> (usize, Range<usize>) {
        let cap = cap.min(self.word_len());
        let mut range = 0..self.elements.len();
        let mut l = 0;
        while l < cap {
            let next = self.narrow(range.clone(), l, at(l));
            if !keep(&next) {
                break;
            }
            range = next;
            l += 1;
        }
        (l, range)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextIntervals {
    pub i1_rn: SlopeInterval,
    pub i2_rn: SlopeInterval,
    pub i1_r: SlopeInterval,
    pub i2_r: SlopeInterval,
}

impl ContextIntervals {
    /// `s ∈ I(r;n) = I1(r;n) ∪ I2(r;n)`.
    pub fn in_heckoid(&self, s: Slope) -> bool {
        self.i1_rn.contains(s) || self.i2_rn.contains(s)
    }

    /// `s ∈ I1(r) ∪ I2(r)`.
    pub fn in_base(&self, s: Slope) -> bool {
        self.i1_r.contains(s) || self.i2_r.contains(s)
    }
}

/// Everything derived from `(r, n)` that the checkers consume.
#[derive(Clone, Debug)]
pub struct HeckoidContext {
    pub params: HeckoidParams,
    /// The slope as given, before mirroring into `(0, 1/2]`.
    pub input_r: Slope,
    pub mirrored: bool,
    pub policy: EndpointPolicy,
    pub u_r: AlternatingWord,
    pub relator: AlternatingWord,
    pub cs_r: CyclicRunSeq,
    pub cs_relator: CyclicRunSeq,
    pub decomp: SRDecomp,
    pub intervals: ContextIntervals,
    pub symmetrized: SymmetrizedSet,
}

impl HeckoidContext {
    pub fn r(&self) -> Slope {
        self.params.r()
    }

    pub fn n(&self) -> u32 {
        self.params.n()
    }

    pub fn m(&self) -> u32 {
        self.params.m()
    }

    pub fn relator_cyclic(&self) -> CyclicAlternatingWord {
        CyclicAlternatingWord::new(self.relator.clone()).expect("even length")
    }
}

pub fn build_context(r: Slope, n: u32) -> Result<HeckoidContext> {
    build_context_with(r, n, EndpointPolicy::Printed)
}

/// Validate `(r, n)`, mirror `r > 1/2` to `1 - r`, and compute the context.
///
/// Rejects integral `r`, `r = 1/p` and `n < 2`.
pub fn build_context_with(r: Slope, n: u32, policy: EndpointPolicy) -> Result<HeckoidContext> {
    if r.is_infinite() || !r.in_unit_interval() {
        return Err(Error::OutOfRange {
            value: r.to_string(),
            expected: "(0,1)",
        });
    }
    let half = Slope::new(1, 2)?;
    let mirrored = r > half;
    let rr = if mirrored { mirror(r)? } else { r };
    let params = HeckoidParams::new(rr, n)?;
    let u_r = u_word(rr)?;
    let relator = power(&u_r, n as usize)?;
    let cs_r = cs_of_word(&CyclicAlternatingWord::new(u_r.clone())?)?;
    let cs_relator = cs_of_word(&CyclicAlternatingWord::new(relator.clone())?)?;
    let decomp = sr_decomposition(rr)?;
    let expected = decomp.cyclic().repeat(n as usize);
    if cs_relator != expected {
        return Err(Error::DecompositionMismatch {
            r: rr.to_string(),
            built: expected.to_string(),
            expected: cs_relator.to_string(),
        });
    }
    let (i1_rn, i2_rn) = heckoid_intervals_with(&params, policy);
    let (i1_r, i2_r) = base_intervals(rr)?;
    let symmetrized = SymmetrizedSet::new(relator.letters(), u_r.len());
    Ok(HeckoidContext {
        params,
        input_r: r,
        mirrored,
        policy,
        u_r,
        relator,
        cs_r,
        cs_relator,
        decomp,
        intervals: ContextIntervals {
            i1_rn,
            i2_rn,
            i1_r,
            i2_r,
        },
        symmetrized,
    })
}
