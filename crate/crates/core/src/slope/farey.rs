use super::{Slope, SlopeInterval};

/// The Farey sequence `F_N`: reduced fractions in `[0,1]` with denominator
/// at most `N`, ascending. Empty for `N = 0`.
pub fn farey_sequence(max_den: i64) -> Vec<Slope> {
    if max_den < 1 {
        return Vec::new();
    }
    let n = max_den;
    let mut out = Vec::new();
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, n);
    out.push(Slope::ZERO);
    while c <= n {
        // c/d is the successor of a/b; both already reduced.
        out.push(Slope::new(c, d).expect("Farey terms are small"));
        let k = (n + b) / d;
        let (e, f) = (k * c - a, k * d - b);
        a = c;
        b = d;
        c = e;
        d = f;
        if a == 1 && b == 1 {
            break;
        }
    }
    out
}

/// Reduced rationals in `i` with denominator at most `max_den`, ascending.
///
/// Infinite endpoints yield an empty list.
pub fn enumerate_slopes(i: &SlopeInterval, max_den: i64) -> Vec<Slope> {
    if max_den < 1 || i.lo.is_infinite() || i.hi.is_infinite() {
        return Vec::new();
    }
    let base = farey_sequence(max_den);
    let lo_int = i.lo.numer().div_euclid(i.lo.denom());
    let hi_int = i.hi.numer().div_euclid(i.hi.denom());
    let mut out = Vec::new();
    for shift in lo_int..=hi_int {
        let shift = Slope::integer(shift);
        // Skip the trailing 1 of each block; the next block starts with it.
        let last_block = shift == Slope::integer(hi_int);
        let take = if last_block { base.len() } else { base.len() - 1 };
        for &x in &base[..take] {
            let s = x.checked_add(shift).expect("small values");
            if i.contains(s) {
                out.push(s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    /// Naive double loop over all q/p.
    fn brute(i: &SlopeInterval, max_den: i64) -> Vec<Slope> {
        let mut v = Vec::new();
        for p in 1..=max_den {
            for q in (i.lo.numer() * p / i.lo.denom() - 1)..=(i.hi.numer() * p / i.hi.denom() + 1) {
                let s = Slope::new(q, p).unwrap();
                if s.denom() == p && i.contains(s) {
                    v.push(s);
                }
            }
        }
        v.sort();
        v
    }

    #[test]
    fn farey_small() {
        let f: Vec<String> = farey_sequence(4).iter().map(|s| s.to_string()).collect();
        assert_eq!(f, ["0/1", "1/4", "1/3", "1/2", "2/3", "3/4", "1/1"]);
        assert_eq!(farey_sequence(1), vec![Slope::ZERO, Slope::ONE]);
        assert!(farey_sequence(0).is_empty());
    }

    #[test]
    fn enumerate_examples() {
        let i = SlopeInterval::closed(Slope::ZERO, sl("1/3")).unwrap();
        assert_eq!(enumerate_slopes(&i, 4), vec![Slope::ZERO, sl("1/4"), sl("1/3")]);
        let i = SlopeInterval::new(sl("5/12"), Slope::ONE, false, true).unwrap();
        assert_eq!(enumerate_slopes(&i, 3), vec![sl("1/2"), sl("2/3"), Slope::ONE]);
        assert!(enumerate_slopes(&i, 0).is_empty());
    }

    #[test]
    fn agrees_with_brute_force() {
        let cases = [
            SlopeInterval::new(sl("5/12"), Slope::ONE, false, true).unwrap(),
            SlopeInterval::new(Slope::ZERO, sl("7/19"), true, false).unwrap(),
            SlopeInterval::new(sl("1/3"), sl("3/8"), false, true).unwrap(),
            SlopeInterval::new(sl("-3/2"), sl("5/3"), true, false).unwrap(),
        ];
        for i in &cases {
            for n in [1, 2, 7, 30, 61] {
                assert_eq!(enumerate_slopes(i, n), brute(i, n), "{i} N={n}");
            }
        }
    }

    #[test]
    fn farey_length_matches_totient_sum() {
        let phi = |n: i64| (1..=n).filter(|&k| super::super::gcd(k as i128, n as i128) == 1).count();
        let expected = 1 + (1..=100).map(phi).sum::<usize>();
        assert_eq!(farey_sequence(100).len(), expected);
    }
}
