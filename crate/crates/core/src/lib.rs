//! Word combinatorics for the even Heckoid groups `Hecke(r;n) = <a, b | u_r^n>`
//! of 2-bridge links, and exhaustive checkers for the run-sequence lemmas that
//! control their conjugacy and torsion behaviour.
//!
//! Modules, bottom-up:
//!
//! * [`slope`]: exact slopes, continued fractions, the fundamental-domain
//!   intervals, Farey enumeration and orbit normalisation.
//! * [`word`]: alternating words in `a`, `b`, the words `u_s`, cyclic words.
//! * [`runs`]: the `CS`/`S`/`CT` run-length calculus, the `(S1, S2)`
//!   decomposition and the cyclic pattern matcher.
//! * [`cancel`]: the symmetrized relator set, pieces, Dehn reduction and
//!   the triviality obstructions.
//! * [`quotient`]: permutation representations and non-conjugacy
//!   certificates.
//! * [`verify`]: report-producing sweeps over bounded-denominator slopes.

pub mod cancel;
pub mod error;
pub mod quotient;
pub mod runs;
pub mod slope;
pub mod verify;
pub mod word;

pub use cancel::{build_context, HeckoidContext, SymmetrizedSet};
pub use error::{Error, Result};
pub use runs::{cs_of_slope, cs_of_word, ct_of_slope, sr_decomposition, CyclicRunSeq, RunSeq, SRDecomp};
pub use slope::{
    cf_expand, cf_value, enumerate_slopes, mirror, parse_slope, tilde, ContinuedFraction,
    HeckoidParams, Slope, SlopeInterval,
};
pub use verify::{Report, VerificationReport};
pub use word::{u_word, AlternatingWord, CyclicAlternatingWord, Letter};

/// Version string stamped into every report.
pub const TOOL_VERSION: &str = concat!("heckoid ", env!("CARGO_PKG_VERSION"));
