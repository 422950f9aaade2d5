//! Boundary traces of the reflection group generated by the Farey edges at
//! `∞` and at `r`, whose closed fundamental region meets the circle at
//! infinity in `I1(r) ∪ I2(r) ∪ {r, ∞}`.

use serde::{Deserialize, Serialize};

use super::{base_intervals, Slope};
use crate::error::{Error, Result};

pub const ORBIT_STEP_CAP: usize = 10_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "class", content = "slope", rename_all = "snake_case")]
pub enum OrbitClass {
    Representative(Slope),
    RClass,
    InfinityClass,
}

/// Reflection of the boundary point `s` in the Farey edge `<alpha, beta>`.
///
/// With `alpha = a/b`, `beta = c/d` this is the integral map with matrix
/// `[[ad+bc, -2ac], [2bd, -(ad+bc)]]` (determinant -1), i.e.
/// `s ↦ ((α+β)s - 2αβ) / (2s - (α+β))`.
pub fn reflect_edge(s: Slope, alpha: Slope, beta: Slope) -> Result<Slope> {
    if !alpha.is_farey_neighbor(&beta) {
        return Err(Error::NotFareyEdge {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
        });
    }
    let (a, b) = (alpha.numer() as i128, alpha.denom() as i128);
    let (c, d) = (beta.numer() as i128, beta.denom() as i128);
    let (x, y) = (s.numer() as i128, s.denom() as i128);
    let trace = a * d + b * c;
    let num = trace
        .checked_mul(x)
        .and_then(|t| t.checked_sub(2 * a * c * y))
        .ok_or(Error::Overflow)?;
    let den = (2 * b * d)
        .checked_mul(x)
        .and_then(|t| t.checked_sub(trace * y))
        .ok_or(Error::Overflow)?;
    Slope::from_i128(num, den)
}

/// Fold by the reflections `x ↦ 2k - x` into `[0, 1]`.
fn fold_unit(s: Slope) -> Result<Slope> {
    let two = 2 * s.denom() as i128;
    let mut num = (s.numer() as i128).rem_euclid(two);
    if num > s.denom() as i128 {
        num = two - num;
    }
    Slope::from_i128(num, s.denom() as i128)
}

/// Orbit representative of `s` in the closed fundamental region for `r`.
pub fn orbit_normalize(s: Slope, r: Slope) -> Result<OrbitClass> {
    let (i1, i2) = base_intervals(r)?;
    let (h1, h2) = (i1.hi, i2.lo);
    let mut x = s;
    for _ in 0..ORBIT_STEP_CAP {
        if x.is_infinite() {
            return Ok(OrbitClass::InfinityClass);
        }
        x = fold_unit(x)?;
        if x == r {
            return Ok(OrbitClass::RClass);
        }
        if x <= h1 || x >= h2 {
            return Ok(OrbitClass::Representative(x));
        }
        x = if x < r {
            reflect_edge(x, h1, r)?
        } else {
            reflect_edge(x, r, h2)?
        };
    }
    Err(Error::IterationCap(ORBIT_STEP_CAP))
}

pub fn same_orbit_hat(s: Slope, s2: Slope, r: Slope) -> Result<bool> {
    Ok(orbit_normalize(s, r)? == orbit_normalize(s2, r)?)
}
