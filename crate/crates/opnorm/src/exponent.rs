//! Extended norm exponents `p ∈ [1, ∞]` and Hölder conjugation.
//!
//! The conjugate pairing `1/p + 1/p* = 1` sends `1 ↦ ∞` and `∞ ↦ 1`, so the
//! infinite exponent is a first-class variant rather than a sentinel float.
//! That keeps conjugate arithmetic total and free of NaNs.

use std::fmt;
use std::str::FromStr;

use crate::error::{NormError, Result};

/// Conjugates of exponents this close to 1 overflow `f64`; they are rounded
/// to the exact limiting pair (1, ∞).
const CONJUGATE_GUARD: f64 = 1e-14;

/// A norm exponent in `[1, ∞]`.
///
/// ```
/// use opnorm::Exponent;
///
/// let q = Exponent::new(4.0).unwrap();
/// assert_eq!(q.conjugate(), Exponent::new(4.0 / 3.0).unwrap());
/// assert_eq!(Exponent::ONE.conjugate(), Exponent::INF);
/// assert_eq!(Exponent::INF.conjugate(), Exponent::ONE);
/// ```
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Exponent {
    /// A finite exponent `p ≥ 1`.
    Finite(f64),
    /// The supremum norm exponent.
    Inf,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);
    pub const INF: Exponent = Exponent::Inf;

    /// Validates `value ≥ 1`; infinite input maps to [`Exponent::Inf`].
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(NormError::InvalidExponent("NaN".into()));
        }
        if value == f64::INFINITY {
            return Ok(Exponent::Inf);
        }
        if value < 1.0 || !value.is_finite() {
            return Err(NormError::InvalidExponent(format!(
                "{value} is outside [1, inf]"
            )));
        }
        Ok(Exponent::Finite(value))
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Exponent::Inf)
    }

    pub fn is_one(self) -> bool {
        matches!(self, Exponent::Finite(v) if v == 1.0)
    }

    /// The exponent as an `f64`, with `∞` mapping to `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(v) => v,
            Exponent::Inf => f64::INFINITY,
        }
    }

    /// Hölder conjugate `p* = p / (p − 1)`.
    ///
    /// Exponents within `1e-14` of 1 conjugate to `∞` exactly, so the
    /// involution `p** = p` survives the boundary.
    pub fn conjugate(self) -> Exponent {
        match self {
            Exponent::Inf => Exponent::ONE,
            Exponent::Finite(p) if p - 1.0 < CONJUGATE_GUARD => Exponent::Inf,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = NormError;

    /// Parses `"2"`, `"2.5"`, `"4/3"` (exact rational, converted to binary
    /// float once) or `"inf"`.
    fn from_str(token: &str) -> Result<Self> {
        let token = token.trim();
        if token.eq_ignore_ascii_case("inf") {
            return Ok(Exponent::Inf);
        }
        if let Some((num, den)) = token.split_once('/') {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| NormError::InvalidExponent(format!("bad numerator in {token:?}")))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| NormError::InvalidExponent(format!("bad denominator in {token:?}")))?;
            if den == 0.0 {
                return Err(NormError::InvalidExponent(format!(
                    "zero denominator in {token:?}"
                )));
            }
            return Exponent::new(num / den);
        }
        let value: f64 = token
            .parse()
            .map_err(|_| NormError::InvalidExponent(format!("unparseable token {token:?}")))?;
        Exponent::new(value)
    }
}

/// The pair of exponents in a `q → r` norm query, with conjugates on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormQuery {
    pub q: Exponent,
    pub r: Exponent,
}

impl NormQuery {
    pub fn new(q: Exponent, r: Exponent) -> Self {
        NormQuery { q, r }
    }

    /// `q*`, the exponent dual to the constraint ball.
    pub fn q_conjugate(self) -> Exponent {
        self.q.conjugate()
    }

    /// `r*`, the exponent dual to the image norm.
    pub fn r_conjugate(self) -> Exponent {
        self.r.conjugate()
    }

    /// The transposed-dual query `r* → q*` that carries the same norm value.
    pub fn transpose_dual(self) -> NormQuery {
        NormQuery::new(self.r.conjugate(), self.q.conjugate())
    }
}

impl fmt::Display for NormQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.q, self.r)
    }
}
