//! Scalar backends.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. Two backends are
//! provided: binary64 (`f64`) for speed and [`Exact`] (arbitrary-precision
//! rationals) for verdicts that must not depend on round-off.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Abs, Pow};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::rounding_modes::RoundingMode;
use malachite_nz::integer::Integer;
use malachite_q::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{EnoError, Result};

/// Exact rational scalar.
pub type Exact = Rational;

/// Relative threshold below which a float jump is attributed to round-off.
pub const FLOAT_SIGN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Float,
    Exact,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Float => f.write_str("float"),
            Backend::Exact => f.write_str("exact"),
        }
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "float" => Ok(Backend::Float),
            "exact" => Ok(Backend::Exact),
            other => Err(format!("unknown backend {other:?} (expected float or exact)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_i64(v: i64) -> Sign {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    /// `(-1)^exponent` as a sign.
    pub fn alternating(exponent: i64) -> Sign {
        if exponent.rem_euclid(2) == 0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// Field-like scalar shared by both backends.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Converts a finite binary64 value. The exact backend keeps every bit.
    fn from_f64(x: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Nearest value of this backend to an exact rational.
    fn from_exact(e: &Exact) -> Self;

    /// Exact rational value of this scalar, `None` for non-finite floats.
    fn to_exact(&self) -> Option<Exact>;

    fn abs(&self) -> Self;

    fn sign(&self) -> Sign;

    /// Sign of `self`, treating magnitudes at or below round-off relative to
    /// `scale` as zero. The exact backend ignores `scale`.
    fn sign_above_noise(&self, scale: &Self) -> Sign;

    /// Equality up to round-off relative to `scale` (exact equality for
    /// [`Exact`]).
    fn agrees_with(&self, other: &Self, scale: &Self) -> bool;

    /// Parses integers, decimals (with optional exponent) and `num/den`.
    fn parse_scalar(s: &str) -> Result<Self>;

    /// Lossless text form: `num/den` for exact values, shortest round-trip
    /// decimal for floats.
    fn to_canonical_string(&self) -> String;

    fn is_zero(&self) -> bool {
        self.sign() == Sign::Zero
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_exact(e: &Exact) -> Self {
        f64::rounding_from(e, RoundingMode::Nearest).0
    }

    fn to_exact(&self) -> Option<Exact> {
        Rational::try_from(*self).ok()
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sign(&self) -> Sign {
        if *self > 0.0 {
            Sign::Positive
        } else if *self < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    fn sign_above_noise(&self, scale: &Self) -> Sign {
        if f64::abs(*self) <= FLOAT_SIGN_TOLERANCE * f64::abs(*scale) {
            Sign::Zero
        } else {
            Scalar::sign(self)
        }
    }

    fn agrees_with(&self, other: &Self, scale: &Self) -> bool {
        let bound = FLOAT_SIGN_TOLERANCE
            * f64::abs(*scale)
                .max(f64::abs(*self))
                .max(f64::abs(*other));
        f64::abs(self - other) <= bound
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: f64 = parse_f64(n, s)?;
            let d: f64 = parse_f64(d, s)?;
            if d == 0.0 {
                return Err(parse_error(s, "zero denominator"));
            }
            return Ok(n / d);
        }
        parse_f64(t, s)
    }

    fn to_canonical_string(&self) -> String {
        format!("{self:?}")
    }
}

fn parse_f64(t: &str, original: &str) -> Result<f64> {
    let v: f64 = t
        .trim()
        .parse()
        .map_err(|e: std::num::ParseFloatError| parse_error(original, &e.to_string()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(parse_error(original, "value is not finite"))
    }
}

fn parse_error(input: &str, reason: &str) -> EnoError {
    EnoError::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

impl Scalar for Exact {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        Rational::ZERO
    }

    fn one() -> Self {
        Rational::ONE
    }

    fn from_i64(v: i64) -> Self {
        Rational::from(v)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::from_signeds(num, den)
    }

    fn from_f64(x: f64) -> Option<Self> {
        Rational::try_from(x).ok()
    }

    fn to_f64(&self) -> f64 {
        f64::rounding_from(self, RoundingMode::Nearest).0
    }

    fn from_exact(e: &Exact) -> Self {
        e.clone()
    }

    fn to_exact(&self) -> Option<Exact> {
        Some(self.clone())
    }

    fn abs(&self) -> Self {
        Abs::abs(self)
    }

    fn sign(&self) -> Sign {
        match malachite_base::num::arithmetic::traits::Sign::sign(self) {
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Positive,
        }
    }

    fn sign_above_noise(&self, _scale: &Self) -> Sign {
        Scalar::sign(self)
    }

    fn agrees_with(&self, other: &Self, _scale: &Self) -> bool {
        self == other
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        parse_exact(s)
    }

    fn to_canonical_string(&self) -> String {
        let (n, d) = self.numerator_and_denominator_ref();
        let minus = if *self < 0u32 { "-" } else { "" };
        format!("{minus}{n}/{d}")
    }
}

/// Parses `num/den`, integers and decimal literals such as `-1.25e-3` into
/// an exact rational.
pub fn parse_exact(s: &str) -> Result<Exact> {
    let t = s.trim();
    if t.is_empty() {
        return Err(parse_error(s, "empty field"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_exact_decimal(n.trim(), s)?;
        let d = parse_exact_decimal(d.trim(), s)?;
        if d == 0u32 {
            return Err(parse_error(s, "zero denominator"));
        }
        return Ok(n / d);
    }
    parse_exact_decimal(t, s)
}

fn parse_exact_decimal(t: &str, original: &str) -> Result<Exact> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = t[pos + 1..]
                .parse()
                .map_err(|_| parse_error(original, "malformed exponent"))?;
            (&t[..pos], exp)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(parse_error(original, "no digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(parse_error(original, "not a decimal number"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = if all_digits.is_empty() {
        Integer::ZERO
    } else {
        all_digits
            .parse::<Integer>()
            .map_err(|_| parse_error(original, "not a decimal number"))?
    };
    if negative {
        numer = -numer;
    }
    let scale = exponent as i64 - frac_part.len() as i64;
    Ok(Rational::from(numer) * Rational::from(10u32).pow(scale))
}
