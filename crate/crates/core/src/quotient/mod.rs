//! Permutation representations of `Hecke(r;n)` and non-conjugacy
//! certificates obtained from them.

mod cache;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cancel::{build_context, HeckoidContext};
use crate::error::{Error, Result};
use crate::slope::Slope;
use crate::word::{invert_letters, u_word, Letter};

pub use cache::{RepCache, CACHE_ENV};

pub const MAX_DEGREE: usize = 8;
pub const DEFAULT_DEGREE_MAX: usize = 7;

/// A permutation of `0..k` as its image array.
pub type Perm = Vec<u8>;

pub fn identity(k: usize) -> Perm {
    (0..k as u8).collect()
}

pub fn inverse(p: &[u8]) -> Perm {
    let mut inv = vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

pub fn is_permutation(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| {
        let ok = (x as usize) < seen.len() && !seen[x as usize];
        if ok {
            seen[x as usize] = true;
        }
        ok
    })
}

/// Cycle lengths, largest first.
pub fn cycle_type(p: &[u8]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermRep {
    #[serde(rename = "deg")]
    pub degree: usize,
    pub a: Perm,
    pub b: Perm,
}

impl PermRep {
    pub fn new(a: Perm, b: Perm) -> Result<Self> {
        let degree = a.len();
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Degree(degree));
        }
        if b.len() != degree || !is_permutation(&a) || !is_permutation(&b) {
            return Err(Error::Cache("images are not permutations of one degree".into()));
        }
        Ok(PermRep { degree, a, b })
    }

    fn image(&self, l: Letter) -> Perm {
        match l {
            Letter::APos => self.a.clone(),
            Letter::BPos => self.b.clone(),
            Letter::ANeg => inverse(&self.a),
            Letter::BNeg => inverse(&self.b),
        }
    }

    /// `u_r^n` maps to the identity.
    pub fn satisfies(&self, ctx: &HeckoidContext) -> bool {
        relator_holds(&evaluate(ctx.u_r.letters(), self), ctx.n() as usize)
    }
}

/// Image of `w` under the right action: the first letter acts first, so
/// `x · (w1 w2) = (x · w1) · w2`.
pub fn evaluate(w: &[Letter], rep: &PermRep) -> Perm {
    let images = [
        rep.image(Letter::APos),
        rep.image(Letter::BPos),
        rep.image(Letter::ANeg),
        rep.image(Letter::BNeg),
    ];
    let slot = |l: Letter| match l {
        Letter::APos => 0,
        Letter::BPos => 1,
        Letter::ANeg => 2,
        Letter::BNeg => 3,
    };
    let mut img = identity(rep.degree);
    for &l in w {
        let p = &images[slot(l)];
        for x in img.iter_mut() {
            *x = p[*x as usize];
        }
    }
    img
}

/// `p^n = id`, i.e. every cycle length divides `n`.
fn relator_holds(p: &[u8], n: usize) -> bool {
    cycle_type(p).iter().all(|&c| n % c == 0)
}

/// Partitions of `k` in descending lexicographic order, `[k]` first.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// The permutation with the given cycle lengths on consecutive points.
pub fn canonical_cycle_perm(parts: &[usize]) -> Perm {
    let k: usize = parts.iter().sum();
    let mut p = identity(k);
    let mut start = 0;
    for &len in parts {
        for i in 0..len {
            p[start + i] = (start + (i + 1) % len) as u8;
        }
        start += len;
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepEnumeration {
    pub degree: usize,
    pub reps: Vec<PermRep>,
    /// False when the candidate budget ran out first.
    pub complete: bool,
    pub candidates_checked: u64,
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// All `(σ_a, σ_b)` with `σ_a` one fixed permutation per cycle type and `σ_b`
/// ranging over the symmetric group, keeping those satisfying the relator.
///
/// `budget` caps the number of candidate pairs examined.
pub fn enumerate_reps(ctx: &HeckoidContext, k: usize, budget: Option<u64>) -> Result<RepEnumeration> {
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::Degree(k));
    }
    let parts = partitions(k);
    let per = factorial(k);
    let total = per * parts.len() as u64;
    let allowed = budget.unwrap_or(u64::MAX).min(total);
    let n = ctx.n() as usize;
    let u = ctx.u_r.letters();
    let jobs: Vec<(Perm, u64)> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let before = per * i as u64;
            (canonical_cycle_perm(p), allowed.saturating_sub(before).min(per))
        })
        .filter(|(_, quota)| *quota > 0)
        .collect();
    let reps: Vec<Vec<PermRep>> = jobs
        .into_par_iter()
        .map(|(a, quota)| {
            (0..k as u8)
                .permutations(k)
                .take(quota as usize)
                .filter_map(|b| {
                    let rep = PermRep {
                        degree: k,
                        a: a.clone(),
                        b,
                    };
                    relator_holds(&evaluate(u, &rep), n).then_some(rep)
                })
                .collect()
        })
        .collect();
    Ok(RepEnumeration {
        degree: k,
        reps: reps.into_iter().flatten().collect(),
        complete: allowed == total,
        candidates_checked: allowed,
    })
}

/// A representation under which `w` has a cycle type different from both
/// `w'` and `w'^{-1}`, so the two are not conjugate in the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub r: Slope,
    pub n: u32,
    pub w: String,
    pub w_other: String,
    pub rep: PermRep,
    pub cycle_type_w: Vec<usize>,
    pub cycle_type_other: Vec<usize>,
    pub cycle_type_other_inv: Vec<usize>,
}

impl Certificate {
    /// Rebuild the context and recheck every claim from the stored fields.
    pub fn replay(&self) -> Result<bool> {
        let ctx = build_context(self.r, self.n)?;
        let rep = PermRep::new(self.rep.a.clone(), self.rep.b.clone())?;
        if !rep.satisfies(&ctx) {
            return Ok(false);
        }
        let w = crate::word::parse_letters(&self.w)?;
        let o = crate::word::parse_letters(&self.w_other)?;
        let ct = cycle_type(&evaluate(&w, &rep));
        let co = cycle_type(&evaluate(&o, &rep));
        let ci = cycle_type(&evaluate(&invert_letters(&o), &rep));
        Ok(ct == self.cycle_type_w
            && co == self.cycle_type_other
            && ci == self.cycle_type_other_inv
            && ct != co
            && ct != ci)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub certificate: Option<Certificate>,
    /// Highest degree whose representations were examined.
    pub searched_to: usize,
    /// Every examined degree was enumerated completely.
    pub complete: bool,
}

/// Where representations come from: a fresh enumeration or a cache.
pub struct RepSource<'a> {
    pub cache: Option<&'a RepCache>,
    pub budget: Option<u64>,
}

impl RepSource<'_> {
    pub fn fresh() -> RepSource<'static> {
        RepSource {
            cache: None,
            budget: None,
        }
    }

    pub fn reps(&self, ctx: &HeckoidContext, k: usize) -> Result<RepEnumeration> {
        if let Some(cache) = self.cache {
            if let Some(e) = cache.get(ctx, k)? {
                return Ok(e);
            }
        }
        let e = enumerate_reps(ctx, k, self.budget)?;
        if let Some(cache) = self.cache {
            if e.complete {
                cache.put(ctx, &e)?;
            }
        }
        Ok(e)
    }
}

/// Try each representation of `enums` in order; the first one under which
/// `w` and `w'^{±1}` have different cycle types is returned as a certificate.
pub fn separate_in(
    w: &[Letter],
    other: &[Letter],
    ctx: &HeckoidContext,
    enums: &[RepEnumeration],
) -> Separation {
    let other_inv = invert_letters(other);
    let mut complete = true;
    let mut searched_to = 1;
    for e in enums {
        complete &= e.complete;
        searched_to = e.degree;
        for rep in &e.reps {
            let ct = cycle_type(&evaluate(w, rep));
            let co = cycle_type(&evaluate(other, rep));
            if ct == co {
                continue;
            }
            let ci = cycle_type(&evaluate(&other_inv, rep));
            if ct != ci {
                return Separation {
                    certificate: Some(Certificate {
                        r: ctx.r(),
                        n: ctx.n(),
                        w: crate::word::letters_to_string(w),
                        w_other: crate::word::letters_to_string(other),
                        rep: rep.clone(),
                        cycle_type_w: ct,
                        cycle_type_other: co,
                        cycle_type_other_inv: ci,
                    }),
                    searched_to,
                    complete,
                };
            }
        }
    }
    Separation {
        certificate: None,
        searched_to,
        complete,
    }
}

/// Search degrees `2..=k_max` for a representation separating `w` from
/// `w'^{±1}` up to conjugacy. Degrees are enumerated lazily.
pub fn separate_words(
    w: &[Letter],
    other: &[Letter],
    ctx: &HeckoidContext,
    k_max: usize,
    source: &RepSource<'_>,
) -> Result<Separation> {
    let mut done: Vec<RepEnumeration> = Vec::new();
    let mut last = Separation {
        certificate: None,
        searched_to: 1,
        complete: true,
    };
    for k in 2..=k_max {
        done.push(source.reps(ctx, k)?);
        last = separate_in(w, other, ctx, &done[done.len() - 1..]);
        last.complete &= done.iter().all(|e| e.complete);
        if last.certificate.is_some() {
            break;
        }
    }
    Ok(last)
}

/// [`separate_words`] for `u_s` against `u_{s'}`.
pub fn separate(
    s: Slope,
    s2: Slope,
    ctx: &HeckoidContext,
    k_max: usize,
    source: &RepSource<'_>,
) -> Result<Separation> {
    separate_words(u_word(s)?.letters(), u_word(s2)?.letters(), ctx, k_max, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_letters, AlternatingWord};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn permutation_basics() {
        assert_eq!(cycle_type(&[1, 2, 0, 4, 3, 5]), [3, 2, 1]);
        assert_eq!(inverse(&[1, 2, 0]), [2, 0, 1]);
        assert!(!is_permutation(&[0, 0]));
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(3), [vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(canonical_cycle_perm(&[2, 1]), [1, 0, 2]);
    }

    #[test]
    fn evaluate_examples() {
        let rep = PermRep::new(vec![1, 0], vec![0, 1]).unwrap();
        let u0 = u_word(Slope::ZERO).unwrap();
        assert_eq!(evaluate(u0.letters(), &rep), [1, 0]);
        assert_eq!(evaluate(&[], &rep), [0, 1]);
        // right action: ab sends x to b(a(x))
        let rep = PermRep::new(vec![1, 2, 0], vec![0, 2, 1]).unwrap();
        assert_eq!(evaluate(&parse_letters("ab").unwrap(), &rep), [2, 1, 0]);
        let w = parse_letters("abAbaBB").unwrap();
        let mut ww = w.clone();
        ww.extend(invert_letters(&w));
        assert_eq!(evaluate(&ww, &rep), identity(3));
        assert_eq!(evaluate(&invert_letters(&w), &rep), inverse(&evaluate(&w, &rep)));
    }

    #[test]
    fn representation_counts() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let counts: Vec<usize> = (1..=6)
            .map(|k| enumerate_reps(&ctx, k, None).unwrap().reps.len())
            .collect();
        assert_eq!(counts, [1, 4, 12, 50, 252, 1324]);
        for rep in enumerate_reps(&ctx, 4, None).unwrap().reps {
            assert!(rep.satisfies(&ctx));
        }
        assert!(matches!(enumerate_reps(&ctx, 0, None), Err(Error::Degree(0))));
    }

    #[test]
    fn budget_marks_partial_enumerations() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let e = enumerate_reps(&ctx, 4, Some(30)).unwrap();
        assert!(!e.complete);
        assert_eq!(e.candidates_checked, 30);
        let full = enumerate_reps(&ctx, 4, None).unwrap();
        assert!(full.complete);
        assert!(e.reps.iter().all(|r| full.reps.contains(r)));
        assert!(e.reps.len() < full.reps.len());
    }

    #[test]
    fn separation_example() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let sep = separate(sl("3/8"), sl("1/2"), &ctx, 6, &RepSource::fresh()).unwrap();
        let cert = sep.certificate.unwrap();
        assert_eq!(cert.rep.degree, 3);
        assert_eq!((cert.rep.a.as_slice(), cert.rep.b.as_slice()), ([1, 2, 0].as_slice(), [0, 2, 1].as_slice()));
        assert_eq!(cert.cycle_type_w, [1, 1, 1]);
        assert_eq!(cert.cycle_type_other, [3]);
        assert_eq!(cert.cycle_type_other_inv, [3]);
        assert!(cert.replay().unwrap());

        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert!(back.replay().unwrap());
        let mut forged = back.clone();
        forged.cycle_type_w = vec![3];
        assert!(!forged.replay().unwrap());

        let same = separate(sl("3/8"), sl("3/8"), &ctx, 5, &RepSource::fresh()).unwrap();
        assert!(same.certificate.is_none());
        assert!(same.complete);
    }

    fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Vec<Letter> {
        let all = [Letter::APos, Letter::BPos, Letter::ANeg, Letter::BNeg];
        (0..len).map(|_| all[rng.random_range(0..4)]).collect()
    }

    #[test]
    fn conjugates_are_never_separated() {
        let ctx = build_context(sl("2/5"), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(200);
        for _ in 0..60 {
            let len = rng.random_range(1..=10);
            let w = random_word(&mut rng, len);
            let len = rng.random_range(0..=6);
            let g = random_word(&mut rng, len);
            let conj: Vec<Letter> = g.iter().chain(&w).chain(&invert_letters(&g)).copied().collect();
            let sep = separate_words(&w, &conj, &ctx, 4, &RepSource::fresh()).unwrap();
            assert!(sep.certificate.is_none());
        }
    }

    #[test]
    fn cycle_type_is_rotation_invariant() {
        let ctx = build_context(sl("3/8"), 2).unwrap();
        let reps = enumerate_reps(&ctx, 4, None).unwrap().reps;
        let u: AlternatingWord = u_word(sl("2/7")).unwrap();
        for rep in reps.iter().take(40) {
            let base = cycle_type(&evaluate(u.letters(), rep));
            for k in 0..u.len() {
                assert_eq!(cycle_type(&evaluate(&u.cyclic_slice(k, u.len()), rep)), base);
            }
        }
    }
}
