use std::fmt;

use serde::{Deserialize, Serialize};

use super::{cf_expand, cf_value, ContinuedFraction, Slope};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SlopeInterval {
    pub lo: Slope,
    pub hi: Slope,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl SlopeInterval {
    pub fn new(lo: Slope, hi: Slope, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return Err(Error::OutOfRange {
                value: format!("{lo}..{hi}"),
                expected: "a nonempty interval",
            });
        }
        Ok(SlopeInterval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn closed(lo: Slope, hi: Slope) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn contains(&self, s: Slope) -> bool {
        let above = s > self.lo || (self.lo_closed && s == self.lo);
        let below = s < self.hi || (self.hi_closed && s == self.hi);
        above && below
    }

    /// Containment of the whole of `other` in `self`.
    pub fn includes(&self, other: &SlopeInterval) -> bool {
        let lo_ok = other.lo > self.lo || (other.lo == self.lo && (self.lo_closed || !other.lo_closed));
        let hi_ok = other.hi < self.hi || (other.hi == self.hi && (self.hi_closed || !other.hi_closed));
        lo_ok && hi_ok
    }
}

impl fmt::Display for SlopeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// How the inner endpoints `r1`, `r2` of `I1(r;n)`, `I2(r;n)` are treated.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndpointPolicy {
    /// Closures by parity of `k`: `[0,r1]`, `(r2,1]` for even `k`; `[0,r1)`, `[r2,1]` for odd.
    #[default]
    Printed,
    Closed,
    Open,
}

impl std::str::FromStr for EndpointPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(EndpointPolicy::Printed),
            "closed" => Ok(EndpointPolicy::Closed),
            "open" => Ok(EndpointPolicy::Open),
            _ => Err(Error::Parse {
                what: "endpoint policy",
                input: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for EndpointPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndpointPolicy::Printed => "printed",
            EndpointPolicy::Closed => "closed",
            EndpointPolicy::Open => "open",
        })
    }
}

/// A slope `0 < r < 1` with expansion length `k >= 2`, and an index `n >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HeckoidParams {
    r: Slope,
    n: u32,
    cf: ContinuedFraction,
}

impl HeckoidParams {
    pub fn new(r: Slope, n: u32) -> Result<Self> {
        if !(r.in_unit_interval() && r != Slope::ZERO && r != Slope::ONE) {
            return Err(Error::OutOfRange {
                value: r.to_string(),
                expected: "(0,1)",
            });
        }
        if n < 2 {
            return Err(Error::InvalidIndex(n));
        }
        let cf = cf_expand(r)?;
        if cf.len() < 2 {
            return Err(Error::ExcludedSlope(r.to_string()));
        }
        Ok(HeckoidParams { r, n, cf })
    }

    pub fn r(&self) -> Slope {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn k(&self) -> usize {
        self.cf.len()
    }

    pub fn k_is_even(&self) -> bool {
        self.k() % 2 == 0
    }

    /// First term `m = m1`.
    pub fn m(&self) -> u32 {
        self.cf.terms()[0] as u32
    }

    fn value_of(&self, f: impl FnOnce(&mut Vec<u64>)) -> Slope {
        let mut t = self.cf.terms().to_vec();
        f(&mut t);
        // Terms stay positive and bounded by those of r plus 2n-2.
        cf_value(&t).expect("endpoint of a valid expansion")
    }

    /// `[m1, ..., m_{k-1}, m_k - 1, 2]`
    pub fn decremented_two(&self) -> Slope {
        self.value_of(|t| {
            *t.last_mut().unwrap() -= 1;
            t.push(2);
        })
    }

    /// `[m1, ..., m_k, 2n - 2]`
    pub fn extended(&self) -> Slope {
        let tail = 2 * self.n as u64 - 2;
        self.value_of(|t| t.push(tail))
    }

    /// `[m1, ..., m_{k-1}, m_k - 1]`
    pub fn decremented(&self) -> Slope {
        self.value_of(|t| *t.last_mut().unwrap() -= 1)
    }

    /// `[m1, ..., m_{k-1}]`
    pub fn truncated(&self) -> Slope {
        self.value_of(|t| {
            t.pop();
        })
    }

    /// `(r1, r2)`, the inner endpoints of `I1(r;n)` and `I2(r;n)`.
    pub fn r1_r2(&self) -> (Slope, Slope) {
        if self.k_is_even() {
            (self.decremented_two(), self.extended())
        } else {
            (self.extended(), self.decremented_two())
        }
    }

    /// `(r̂1, r̂2)`, the Farey parents of `r` bounding `I1(r)` and `I2(r)`.
    pub fn rhat1_rhat2(&self) -> (Slope, Slope) {
        if self.k_is_even() {
            (self.decremented(), self.truncated())
        } else {
            (self.truncated(), self.decremented())
        }
    }

    /// Hypothesis range of the lemma asserting the pattern
    /// `(m+1, S2e, S1, S2, S1, S2b, m+1)` (even `k`) or its odd-`k` dual.
    pub fn single_block_range(&self) -> SlopeInterval {
        let (lo_even, hi_even) = (self.decremented(), self.decremented_two());
        let iv = if self.k_is_even() {
            SlopeInterval::new(lo_even, hi_even, false, true)
        } else {
            SlopeInterval::new(hi_even, lo_even, true, false)
        };
        iv.expect("ordered by construction")
    }

    /// Hypothesis range of the lemma asserting `(m, S1e, d<S2,S1>, S2, S1b, m)`
    /// (even `k`) or its odd-`k` dual, `1 <= d <= 2n-3`.
    pub fn multi_block_range(&self) -> SlopeInterval {
        let (a, b) = (self.extended(), self.truncated());
        let iv = if self.k_is_even() {
            SlopeInterval::new(a, b, false, false)
        } else {
            SlopeInterval::new(b, a, false, false)
        };
        iv.expect("ordered by construction")
    }
}

/// `(I1(r;n), I2(r;n))` with the closures fixed by the parity of `k`.
pub fn heckoid_intervals(p: &HeckoidParams) -> (SlopeInterval, SlopeInterval) {
    heckoid_intervals_with(p, EndpointPolicy::Printed)
}

pub fn heckoid_intervals_with(
    p: &HeckoidParams,
    policy: EndpointPolicy,
) -> (SlopeInterval, SlopeInterval) {
    let (r1, r2) = p.r1_r2();
    let (c1, c2) = match policy {
        EndpointPolicy::Printed => (p.k_is_even(), !p.k_is_even()),
        EndpointPolicy::Closed => (true, true),
        EndpointPolicy::Open => (false, false),
    };
    (
        SlopeInterval::new(Slope::ZERO, r1, true, c1).expect("0 < r1"),
        SlopeInterval::new(r2, Slope::ONE, c2, true).expect("r2 < 1"),
    )
}

/// `(I1(r), I2(r)) = ([0, r̂1], [r̂2, 1])`.
pub fn base_intervals(r: Slope) -> Result<(SlopeInterval, SlopeInterval)> {
    r.require_unit()?;
    let cf = cf_expand(r)?;
    if cf.len() < 2 || cf.is_unit() {
        return Err(Error::ExcludedSlope(r.to_string()));
    }
    // n does not enter r̂1, r̂2.
    let p = HeckoidParams { r, n: 2, cf };
    let (h1, h2) = p.rhat1_rhat2();
    Ok((
        SlopeInterval::closed(Slope::ZERO, h1)?,
        SlopeInterval::closed(h2, Slope::ONE)?,
    ))
}
