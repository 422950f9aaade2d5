use std::fmt;
use std::str::FromStr;

use super::Slope;
use crate::error::{Error, Result};

/// A finite continued fraction `[m1, ..., mk] = 1/(m1 + 1/(m2 + ...))`.
///
/// Expansions produced by [`cf_expand`] are canonical: the last term is at
/// least 2, the empty sequence is 0, and the single term `[1]` is reserved
/// for the slope 1. Arbitrary positive sequences are accepted for evaluation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ContinuedFraction {
    terms: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<u64>) -> Result<Self> {
        if terms.contains(&0) {
            return Err(Error::NonPositiveTerm);
        }
        Ok(ContinuedFraction { terms })
    }

    /// The expansion of the slope 1.
    pub fn unit() -> Self {
        ContinuedFraction { terms: vec![1] }
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.terms == [1]
    }

    pub fn is_canonical(&self) -> bool {
        match self.terms.last() {
            None => true,
            Some(&last) => last >= 2 || self.is_unit(),
        }
    }

    /// First term `m1`; `None` for the empty expansion.
    pub fn head(&self) -> Option<u64> {
        self.terms.first().copied()
    }

    pub fn value(&self) -> Result<Slope> {
        cf_value(&self.terms)
    }
}

/// Canonical expansion of `s ∈ [0,1]`.
pub fn cf_expand(s: Slope) -> Result<ContinuedFraction> {
    s.require_unit()?;
    if s == Slope::ONE {
        return Ok(ContinuedFraction::unit());
    }
    let (mut num, mut den) = (s.numer(), s.denom());
    let mut terms = Vec::new();
    // s = num/den < 1; 1/s = den/num = m + rem/num
    while num != 0 {
        terms.push((den / num) as u64);
        let rem = den % num;
        den = num;
        num = rem;
    }
    Ok(ContinuedFraction { terms })
}

/// Value of any positive-term sequence; the empty sequence is 0.
pub fn cf_value(terms: &[u64]) -> Result<Slope> {
    if terms.contains(&0) {
        return Err(Error::NonPositiveTerm);
    }
    // v = num/den, folded from the innermost term outwards.
    let (mut num, mut den): (i128, i128) = (0, 1);
    for &t in terms.iter().rev() {
        let t = i128::try_from(t).map_err(|_| Error::Overflow)?;
        let next_den = t
            .checked_mul(den)
            .and_then(|x| x.checked_add(num))
            .ok_or(Error::Overflow)?;
        num = den;
        den = next_den;
        if den > i64::MAX as i128 {
            return Err(Error::Overflow);
        }
    }
    Slope::from_i128(num, den)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "continued fraction",
            input: s.to_string(),
        };
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(ContinuedFraction::default());
        }
        let terms = inner
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        ContinuedFraction::new(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(cf_expand(sl("2/5")).unwrap().terms(), &[2, 2]);
        assert_eq!(cf_expand(sl("3/8")).unwrap().terms(), &[2, 1, 2]);
        assert!(cf_expand(Slope::ZERO).unwrap().is_empty());
        assert!(cf_expand(Slope::ONE).unwrap().is_unit());
        assert!(cf_expand(Slope::INFINITY).is_err());
        assert!(cf_expand(sl("3/2")).is_err());
        assert!(cf_expand(sl("-1/2")).is_err());
    }

    #[test]
    fn value_examples() {
        assert_eq!(cf_value(&[2, 2, 2]).unwrap(), sl("5/12"));
        assert_eq!(cf_value(&[2, 1, 1, 2]).unwrap(), sl("5/13"));
        assert_eq!(cf_value(&[]).unwrap(), Slope::ZERO);
        assert_eq!(cf_value(&[1]).unwrap(), Slope::ONE);
        assert_eq!(cf_value(&[2, 0]), Err(Error::NonPositiveTerm));
    }

    #[test]
    fn value_overflow_detected() {
        assert_eq!(cf_value(&[u64::MAX, u64::MAX, 3]), Err(Error::Overflow));
    }

    #[test]
    fn display_and_parse() {
        let cf: ContinuedFraction = "[2, 1,2]".parse().unwrap();
        assert_eq!(cf.to_string(), "[2,1,2]");
        assert!("[2,0]".parse::<ContinuedFraction>().is_err());
        assert!("2,1".parse::<ContinuedFraction>().is_err());
    }

    #[test]
    fn round_trip_all_denominators_to_500() {
        for p in 1..=500i64 {
            for q in 0..=p {
                if super::super::gcd(q as i128, p as i128) != 1 {
                    continue;
                }
                let s = Slope::new(q, p).unwrap();
                let cf = cf_expand(s).unwrap();
                assert!(cf.is_canonical(), "{s} -> {cf}");
                assert_eq!(cf.value().unwrap(), s);
            }
        }
    }

    proptest! {
        #[test]
        fn mirror_round_trips_by_value(q in 0i64..1000, p in 1i64..1000) {
            prop_assume!(q <= p);
            let s = Slope::new(q, p).unwrap();
            let m = super::super::mirror(s).unwrap();
            let back = cf_expand(m).unwrap().value().unwrap();
            prop_assert_eq!(super::super::mirror(back).unwrap(), s);
            // for s < 1/2 the mirror image has first term 1
            if s > Slope::ZERO && s < Slope::new(1, 2).unwrap() {
                prop_assert_eq!(cf_expand(m).unwrap().head(), Some(1));
            }
        }
    }
}
