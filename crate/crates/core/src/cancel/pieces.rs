use serde::Serialize;

use super::SymmetrizedSet;
use crate::error::{Error, Result};
use crate::word::{letters_to_string, AlternatingWord, CyclicAlternatingWord, Letter};

/// `w` is a common prefix of at least two distinct elements of the set.
pub fn is_piece(w: &[Letter], set: &SymmetrizedSet) -> bool {
    !w.is_empty() && set.prefix_count(w) >= 2
}

/// Length of the longest piece starting at `w[i]`.
fn longest_piece_at(w: &[Letter], i: usize, set: &SymmetrizedSet) -> usize {
    set.longest_prefix_by(|j| w[i + j], w.len() - i, |r| r.len() >= 2).0
}

/// Dynamic-programming table behind [`min_pieces`].
#[derive(Clone, Debug, Serialize)]
pub struct PieceTable {
    pub word: String,
    /// `longest_piece[i]`: the longest piece starting at position `i`.
    pub longest_piece: Vec<usize>,
    /// `best[i]`: the least number of pieces covering the prefix of length `i`.
    pub best: Vec<u32>,
    /// One optimal factorization of the whole word.
    pub pieces: Vec<String>,
}

impl PieceTable {
    pub fn min_pieces(&self) -> u32 {
        *self.best.last().expect("nonempty table")
    }
}

/// Shortest-path DP over prefix positions.
///
/// Pieces are closed under taking subwords, so from position `i` every
/// length up to the longest piece there is available. A letter that is not
/// itself a piece counts as one piece.
pub fn min_pieces_table(w: &[Letter], set: &SymmetrizedSet) -> Result<PieceTable> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !set.is_subword(w) {
        return Err(Error::NotRelatorSubword);
    }
    let n = w.len();
    let longest: Vec<usize> = (0..n).map(|i| longest_piece_at(w, i, set)).collect();
    let mut best = vec![u32::MAX; n + 1];
    let mut back = vec![0usize; n + 1];
    best[0] = 0;
    for i in 0..n {
        let here = best[i];
        for l in 1..=longest[i].max(1) {
            if here + 1 < best[i + l] {
                best[i + l] = here + 1;
                back[i + l] = i;
            }
        }
    }
    let mut cuts = vec![n];
    while let Some(&j) = cuts.last() {
        if j == 0 {
            break;
        }
        cuts.push(back[j]);
    }
    cuts.reverse();
    let pieces = cuts
        .windows(2)
        .map(|c| letters_to_string(&w[c[0]..c[1]]))
        .collect();
    Ok(PieceTable {
        word: letters_to_string(w),
        longest_piece: longest,
        best,
        pieces,
    })
}

/// The least `j` such that `w` is a product of `j` pieces.
pub fn min_pieces(w: &[Letter], set: &SymmetrizedSet) -> Result<u32> {
    min_pieces_table(w, set).map(|t| t.min_pieces())
}

/// A maximal subword of a cyclic word that is also a subword of the relator
/// cyclic words `(R^{±1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorSubword {
    pub start: usize,
    pub len: usize,
    pub word: AlternatingWord,
}

/// For each start of `v`, the longest relator subword read from there,
/// capped at `|v|`.
pub(crate) fn common_subword_lengths(v: &CyclicAlternatingWord, set: &SymmetrizedSet) -> Vec<usize> {
    let w = v.representative().letters();
    let n = w.len();
    (0..n)
        .map(|i| set.longest_prefix_by(|j| w[(i + j) % n], n, |r| !r.is_empty()).0)
        .collect()
}

/// Starts `i` whose common subword is not contained in the one starting at `i-1`.
pub(crate) fn maximal_starts(lengths: &[usize]) -> Vec<usize> {
    let n = lengths.len();
    (0..n)
        .filter(|&i| lengths[i] > 0 && lengths[(i + n - 1) % n] <= lengths[i])
        .collect()
}

/// Maximal subwords of `(v)` that occur in `(R^{±1})`, in order of start.
///
/// When every rotation of `v` is itself a relator subword, only the one at
/// position 0 is returned.
pub fn relator_subwords_of(v: &CyclicAlternatingWord, set: &SymmetrizedSet) -> Vec<RelatorSubword> {
    let lengths = common_subword_lengths(v, set);
    let n = lengths.len();
    let starts = if n > 0 && lengths.iter().all(|&l| l == n) {
        vec![0]
    } else {
        maximal_starts(&lengths)
    };
    let rep = v.representative();
    starts
        .into_iter()
        .map(|start| {
            let len = lengths[start];
            let word = AlternatingWord::new(rep.cyclic_slice(start, len))
                .expect("subwords of alternating cyclic words alternate");
            RelatorSubword { start, len, word }
        })
        .collect()
}
