//! Exact slopes, continued fractions and the fundamental-domain intervals.

mod cf;
mod farey;
mod interval;
mod orbit;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use cf::{cf_expand, cf_value, ContinuedFraction};
pub use farey::{enumerate_slopes, farey_sequence};
pub use interval::{
    base_intervals, heckoid_intervals, heckoid_intervals_with, EndpointPolicy, HeckoidParams,
    SlopeInterval,
};
pub use orbit::{orbit_normalize, reflect_edge, same_orbit_hat, OrbitClass, ORBIT_STEP_CAP};

/// An element of `Q ∪ {∞}` stored as a reduced fraction.
///
/// `den > 0` for finite values; infinity is the unique value `1/0`.
/// All arithmetic is checked: overflow is reported, never wrapped.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    num: i64,
    den: i64,
}

pub(crate) fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Slope {
    pub const ZERO: Slope = Slope { num: 0, den: 1 };
    pub const ONE: Slope = Slope { num: 1, den: 1 };
    pub const INFINITY: Slope = Slope { num: 1, den: 0 };

    /// Reduce `num/den`. A zero denominator with nonzero numerator yields infinity.
    pub fn new(num: i64, den: i64) -> Result<Slope> {
        Self::from_i128(num as i128, den as i128)
    }

    pub(crate) fn from_i128(num: i128, den: i128) -> Result<Slope> {
        if den == 0 {
            return if num == 0 {
                Err(Error::ZeroDenominator)
            } else {
                Ok(Slope::INFINITY)
            };
        }
        let g = gcd(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let num = i64::try_from(n).map_err(|_| Error::Overflow)?;
        let den = i64::try_from(d).map_err(|_| Error::Overflow)?;
        Ok(Slope { num, den })
    }

    pub fn integer(k: i64) -> Slope {
        Slope { num: k, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// True for finite values with `0 <= self <= 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_infinite() && self.num >= 0 && self.num <= self.den
    }

    pub(crate) fn require_unit(&self) -> Result<()> {
        if self.in_unit_interval() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                value: self.to_string(),
                expected: "[0,1]",
            })
        }
    }

    fn require_finite(&self) -> Result<()> {
        if self.is_infinite() {
            Err(Error::OutOfRange {
                value: self.to_string(),
                expected: "Q (finite)",
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(self, rhs: Slope) -> Result<Slope> {
        self.require_finite()?;
        rhs.require_finite()?;
        let n = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        Slope::from_i128(n, self.den as i128 * rhs.den as i128)
    }

    pub fn checked_sub(self, rhs: Slope) -> Result<Slope> {
        self.checked_add(Slope {
            num: rhs.num.checked_neg().ok_or(Error::Overflow)?,
            den: rhs.den,
        })
    }

    pub fn checked_mul(self, rhs: Slope) -> Result<Slope> {
        self.require_finite()?;
        rhs.require_finite()?;
        Slope::from_i128(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }

    /// Farey neighbours: `|a d - b c| = 1`. Infinity neighbours the integers.
    pub fn is_farey_neighbor(&self, other: &Slope) -> bool {
        let det = self.num as i128 * other.den as i128 - other.num as i128 * self.den as i128;
        det.abs() == 1
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
            }
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Accepts `q/p`, a bare integer, or `inf` / `∞`.
    fn from_str(s: &str) -> Result<Slope> {
        let t = s.trim();
        let bad = || Error::Parse {
            what: "slope",
            input: s.to_string(),
        };
        if t == "inf" || t == "∞" {
            return Ok(Slope::INFINITY);
        }
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d < 0 {
                    return Err(bad());
                }
                Slope::new(n, d).map_err(|_| bad())
            }
            None => t.parse::<i64>().map(Slope::integer).map_err(|_| bad()),
        }
    }
}

/// Parse either dialect: `q/p` or a continued fraction `[m1,m2,...]`.
pub fn parse_slope(s: &str) -> Result<Slope> {
    if s.trim_start().starts_with('[') {
        s.parse::<ContinuedFraction>()?.value()
    } else {
        s.parse()
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `s ↦ 1 - s`, the symmetry exchanging the loops of slopes `s` and `1 - s`.
pub fn mirror(s: Slope) -> Result<Slope> {
    s.require_unit()?;
    Slope::ONE.checked_sub(s)
}

/// The slope whose `CS` equals `CT(s)`.
///
/// For `s = [l1, ..., lt]`: `[l3, ..., lt]` when `l2 = 1`, `[l2 - 1, l3, ..., lt]`
/// when `l2 >= 2`, and `0` when `t = 1`.
pub fn tilde(s: Slope) -> Result<Slope> {
    s.require_unit()?;
    if s == Slope::ZERO || s == Slope::ONE {
        return Err(Error::OutOfRange {
            value: s.to_string(),
            expected: "(0,1)",
        });
    }
    let l = cf_expand(s)?;
    let terms = l.terms();
    if terms.len() == 1 {
        return Ok(Slope::ZERO);
    }
    let rest: Vec<u64> = if terms[1] == 1 {
        terms[2..].to_vec()
    } else {
        std::iter::once(terms[1] - 1)
            .chain(terms[2..].iter().copied())
            .collect()
    };
    cf_value(&rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(s: &str) -> Slope {
        s.parse().unwrap()
    }

    #[test]
    fn reduces_and_orders() {
        assert_eq!(Slope::new(6, 16).unwrap(), sl("3/8"));
        assert_eq!(Slope::new(3, -8).unwrap(), sl("-3/8"));
        assert!(sl("1/3") < sl("3/8"));
        assert!(Slope::INFINITY > sl("100000"));
        assert_eq!(Slope::new(5, 0).unwrap(), Slope::INFINITY);
        assert_eq!(Slope::new(0, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Slope::new(i64::MAX, 1).unwrap();
        assert_eq!(big.checked_add(big), Err(Error::Overflow));
        assert_eq!(
            Slope::new(i64::MIN, 1).unwrap().checked_sub(Slope::ONE),
            Err(Error::Overflow)
        );
    }

    #[test]
    fn parse_both_dialects() {
        assert_eq!(parse_slope("3/8").unwrap(), sl("3/8"));
        assert_eq!(parse_slope("[2,1,2]").unwrap(), sl("3/8"));
        assert_eq!(parse_slope("[]").unwrap(), Slope::ZERO);
        assert!(parse_slope("not-a-slope").is_err());
        assert!(parse_slope("1/-2").is_err());
        assert_eq!(parse_slope("inf").unwrap(), Slope::INFINITY);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(mirror(sl("3/8")).unwrap(), sl("5/8"));
        assert_eq!(mirror(sl("1/2")).unwrap(), sl("1/2"));
        assert_eq!(mirror(Slope::ZERO).unwrap(), Slope::ONE);
        assert!(mirror(sl("3/2")).is_err());
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde(sl("3/8")).unwrap(), sl("1/2"));
        assert_eq!(tilde(sl("2/5")).unwrap(), Slope::ONE);
        assert_eq!(tilde(sl("1/7")).unwrap(), Slope::ZERO);
        assert_eq!(tilde(sl("5/12")).unwrap(), sl("2/3"));
        assert!(tilde(Slope::ZERO).is_err());
        assert!(tilde(Slope::ONE).is_err());
        assert!(tilde(Slope::INFINITY).is_err());
    }
}
