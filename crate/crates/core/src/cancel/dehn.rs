use serde::Serialize;

use super::SymmetrizedSet;
use crate::error::{Error, Result};
use crate::word::{invert_letters, letters_to_string, parse_letters, Letter};

/// Cancel adjacent inverse pairs.
pub fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancelling inverse pairs across the ends.
pub fn cyclic_reduce(w: &[Letter]) -> Vec<Letter> {
    let w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

fn reduce(w: &[Letter], cyclic: bool) -> Vec<Letter> {
    if cyclic {
        cyclic_reduce(w)
    } else {
        free_reduce(w)
    }
}

/// One rewrite `x -> y⁻¹` where `xy` is an element of the symmetrized set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnStep {
    /// Start of `x` in `before`; in cyclic mode `x` may wrap around the end.
    pub position: usize,
    pub replaced: usize,
    pub replacement: usize,
    pub element: String,
    pub before: String,
    pub after: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DehnTrace {
    pub input: String,
    pub cyclic: bool,
    pub steps: Vec<DehnStep>,
    pub result: String,
}

impl DehnTrace {
    pub fn is_trivial(&self) -> bool {
        self.result.is_empty()
    }

    /// Re-derive every step from its recorded data.
    ///
    /// Checks that each element belongs to `set`, that `x` really is a prefix
    /// of it matched in the word, that `x` is longer than half the relator,
    /// and that the recorded word after the step is the reduced rewrite.
    pub fn replay(&self, set: &SymmetrizedSet) -> Result<()> {
        let fail = |i: usize, what: &str| Err(Error::Pattern(format!("step {i}: {what}")));
        let mut current = reduce(&parse_letters(&self.input)?, self.cyclic);
        for (i, step) in self.steps.iter().enumerate() {
            let before = parse_letters(&step.before)?;
            if before != current {
                return fail(i, "does not continue from the previous word");
            }
            let e = parse_letters(&step.element)?;
            if !set.contains(&e) {
                return fail(i, "element is not in the symmetrized set");
            }
            let l = step.replaced;
            if 2 * l <= e.len() || l > before.len() {
                return fail(i, "match is not longer than half the relator");
            }
            let n = before.len();
            let rotated: Vec<Letter> = if self.cyclic {
                (0..n).map(|j| before[(step.position + j) % n]).collect()
            } else {
                before.clone()
            };
            let at = if self.cyclic { 0 } else { step.position };
            if at + l > rotated.len() || rotated[at..at + l] != e[..l] {
                return fail(i, "matched text differs from the element prefix");
            }
            let comp = invert_letters(&e[l..]);
            let rewritten: Vec<Letter> = rotated[..at]
                .iter()
                .chain(&comp)
                .chain(&rotated[at + l..])
                .copied()
                .collect();
            let after = reduce(&rewritten, self.cyclic);
            if letters_to_string(&after) != step.after || after.len() >= before.len() {
                return fail(i, "rewrite does not produce the recorded shorter word");
            }
            current = after;
        }
        if letters_to_string(&current) != self.result {
            return Err(Error::Pattern("final word differs from the last step".into()));
        }
        Ok(())
    }
}

/// Dehn's algorithm against the symmetrized set.
///
/// Repeatedly replaces a subword `x` that is a prefix of an element `xy`
/// with `|x| > |xy|/2` by `y⁻¹`, then reduces (cyclically if `cyclic`).
/// The longest match wins, then the leftmost start, then the first element
/// in sorted order. Each step shortens the word, so the loop terminates.
pub fn dehn_reduce(w: &[Letter], set: &SymmetrizedSet, cyclic: bool) -> DehnTrace {
    let input = letters_to_string(w);
    let big = set.word_len();
    let mut current = reduce(w, cyclic);
    let mut steps = Vec::new();
    loop {
        let n = current.len();
        if n == 0 {
            break;
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..n {
            let cap = if cyclic { n } else { n - i };
            let (l, range) =
                set.longest_prefix_by(|j| current[(i + j) % n], cap, |r| !r.is_empty());
            if 2 * l > big && best.is_none_or(|(bl, _, _)| l > bl) {
                best = Some((l, i, range.start));
            }
        }
        let Some((l, i, idx)) = best else { break };
        let e = &set.elements()[idx];
        let comp = invert_letters(&e[l..]);
        let rewritten: Vec<Letter> = if cyclic {
            comp.iter()
                .copied()
                .chain((l..n).map(|j| current[(i + j) % n]))
                .collect()
        } else {
            current[..i]
                .iter()
                .chain(&comp)
                .chain(&current[i + l..])
                .copied()
                .collect()
        };
        let next = reduce(&rewritten, cyclic);
        steps.push(DehnStep {
            position: i,
            replaced: l,
            replacement: comp.len(),
            element: letters_to_string(e),
            before: letters_to_string(&current),
            after: letters_to_string(&next),
        });
        current = next;
    }
    DehnTrace {
        input,
        cyclic,
        steps,
        result: letters_to_string(&current),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cancel::build_context;
    use crate::slope::Slope;
    use crate::word::{power, u_word};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn reductions() {
        let w = parse_letters("abBAab").unwrap();
        assert_eq!(letters_to_string(&free_reduce(&w)), "ab");
        let w = parse_letters("AbaBa").unwrap();
        assert_eq!(letters_to_string(&cyclic_reduce(&w)), "a");
        assert!(cyclic_reduce(&parse_letters("abBA").unwrap()).is_empty());
    }

    #[test]
    fn relator_and_conjugate_vanish() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let set = &ctx.symmetrized;
        for cyclic in [false, true] {
            let t = dehn_reduce(ctx.relator.letters(), set, cyclic);
            assert!(t.is_trivial());
            t.replay(set).unwrap();
            let mut w = parse_letters("bA").unwrap();
            w.extend(ctx.relator.letters());
            w.extend(parse_letters("aB").unwrap());
            let t = dehn_reduce(&w, set, cyclic);
            assert!(t.is_trivial(), "cyclic={cyclic}");
            t.replay(set).unwrap();
        }
    }

    #[test]
    fn u_three_eighths_in_two_fifths() {
        // The longest common subword has 12 > 10 letters, so one rewrite applies.
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let u = u_word(sl("3/8")).unwrap();
        let t = dehn_reduce(u.letters(), &ctx.symmetrized, true);
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].replaced, 12);
        assert_eq!(t.result.len(), 12);
        assert!(!t.is_trivial());
        t.replay(&ctx.symmetrized).unwrap();
    }

    #[test]
    fn tampered_trace_is_rejected() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let u = u_word(sl("3/8")).unwrap();
        let mut t = dehn_reduce(u.letters(), &ctx.symmetrized, true);
        t.steps[0].after.push('a');
        assert!(t.replay(&ctx.symmetrized).is_err());
    }

    fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Vec<Letter> {
        let all = [Letter::APos, Letter::BPos, Letter::ANeg, Letter::BNeg];
        let mut w: Vec<Letter> = Vec::new();
        while w.len() < len {
            let l = all[rng.random_range(0..4)];
            if w.last() != Some(&l.inverse()) {
                w.push(l);
            }
        }
        w
    }

    #[test]
    fn products_of_conjugates_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (r, n) in [("2/5", 2), ("3/8", 2), ("5/12", 3)] {
            let ctx = build_context(sl(r), n).unwrap();
            let rel = ctx.relator.letters().to_vec();
            let inv = invert_letters(&rel);
            for _ in 0..30 {
                let mut w = Vec::new();
                for _ in 0..rng.random_range(1..=4) {
                    let len = rng.random_range(0..=8);
                    let g = random_word(&mut rng, len);
                    w.extend(&g);
                    w.extend(if rng.random_bool(0.5) { &rel } else { &inv });
                    w.extend(invert_letters(&g));
                }
                let t = dehn_reduce(&w, &ctx.symmetrized, true);
                assert!(t.is_trivial(), "{r} n={n}: {}", letters_to_string(&w));
                t.replay(&ctx.symmetrized).unwrap();
            }
        }
    }

    #[test]
    fn powers_of_relator_root_reduce_to_its_remainder() {
        let ctx = build_context(sl("2/5"), 3).unwrap();
        let u5 = power(&ctx.u_r, 5).unwrap();
        let t = dehn_reduce(u5.letters(), &ctx.symmetrized, true);
        // u^5 = u^2 in the group; u^2 is shorter than half the relator plus one root.
        t.replay(&ctx.symmetrized).unwrap();
        assert!(t.result.len() <= 2 * ctx.u_r.len());
    }
}
