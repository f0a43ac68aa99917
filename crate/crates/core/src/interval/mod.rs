//! Closed intervals with binary64 endpoints and outward rounding.
//!
//! Every rigorous quantity in the crate is carried by [`Interval`]. Arithmetic
//! is fallible: division by an interval containing zero and endpoint overflow
//! are errors, never infinite endpoints. The std operators return
//! `Result<Interval>`; one side must be an `Interval`, the other may be an
//! `Interval`, an `f64` or a `Result<Interval>`:
//!
//! ```
//! use polya::Interval;
//! let x = Interval::new(1.0, 2.0).unwrap();
//! let y = ((x * 3.0)? + 1.0)? / x;
//! assert!(y.unwrap().contains(2.5));
//! # Ok::<(), polya::Error>(())
//! ```

pub mod constants;
pub mod elementary;
pub mod round;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use round::*;

/// Closed interval `[lo, hi]` with finite binary64 endpoints.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    lo: f64,
    hi: f64,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(r: RawInterval) -> Result<Self> {
        Interval::new(r.lo, r.hi)
    }
}

impl From<Interval> for RawInterval {
    fn from(i: Interval) -> Self {
        RawInterval { lo: i.lo, hi: i.hi }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "[{:.*}, {:.*}]", p, self.lo, p, self.hi),
            None => write!(f, "[{}, {}]", self.lo, self.hi),
        }
    }
}

#[inline]
fn finite(lo: f64, hi: f64) -> Result<Interval> {
    if lo.is_finite() && hi.is_finite() {
        Ok(Interval { lo, hi })
    } else {
        Err(Error::OverflowToNonFinite)
    }
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        if lo > hi {
            return Err(Error::InvertedInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Thin interval holding a binary64 value exactly.
    pub fn point(x: f64) -> Result<Self> {
        Interval::new(x, x)
    }

    /// Thin interval for small integers; panics on non-finite input, which an
    /// `i32` can never produce.
    pub fn int(n: i32) -> Self {
        Interval { lo: n as f64, hi: n as f64 }
    }

    /// Enclosure of the rational `num/den`.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        let n = num as f64;
        let d = den as f64;
        if n as i64 != num || d as i64 != den {
            return Err(Error::DomainNotSupported(format!(
                "{num}/{den} is not exactly representable"
            )));
        }
        Interval::point(n)? / Interval::point(d)?
    }

    /// Outward-rounded `[center - radius, center + radius]`.
    pub fn midrad(center: f64, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        if radius < 0.0 {
            return Err(Error::DomainNotSupported(format!("negative radius {radius}")));
        }
        finite(sub_down(center, radius), add_up(center, radius))
    }

    /// Outward-rounded `c ± radius` for an already enclosed center.
    pub fn widen(self, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::NonFiniteInput);
        }
        finite(sub_down(self.lo, radius), add_up(self.hi, radius))
    }

    /// Enclosure of a decimal literal such as `"0.33"` or `"-1.5e-3"`.
    ///
    /// Literals that round-trip exactly through binary64 give a thin
    /// interval; others are widened to the two neighbouring floats.
    pub fn from_decimal(text: &str) -> Result<Self> {
        let s = text.trim();
        let x: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("not a decimal number: {text:?}")))?;
        if !x.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        if decimal_is_exact(s, x) {
            Interval::point(x)
        } else {
            finite(next_down(x), next_up(x))
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Nearest-rounded midpoint; lies inside the interval.
    pub fn mid(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    /// Upper bound on the radius around [`Interval::mid`].
    pub fn rad(&self) -> f64 {
        let m = self.mid();
        sub_up(m, self.lo).max(sub_up(self.hi, m))
    }

    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn is_thin(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Certainly `> t` for every member.
    pub fn gt(&self, t: f64) -> bool {
        self.lo > t
    }

    /// Certainly `< t` for every member.
    pub fn lt(&self, t: f64) -> bool {
        self.hi < t
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo >= 0.0
    }

    /// Split at the midpoint into two halves sharing the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }

    pub fn add(self, rhs: Interval) -> Result<Interval> {
        finite(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }

    pub fn sub(self, rhs: Interval) -> Result<Interval> {
        finite(sub_down(self.lo, rhs.hi), sub_up(self.hi, rhs.lo))
    }

    pub fn mul(self, rhs: Interval) -> Result<Interval> {
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = mul_down(a, c).min(mul_down(a, d)).min(mul_down(b, c)).min(mul_down(b, d));
        let hi = mul_up(a, c).max(mul_up(a, d)).max(mul_up(b, c)).max(mul_up(b, d));
        finite(lo, hi)
    }

    pub fn div(self, rhs: Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::DivisionByZeroInterval);
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = div_down(a, c).min(div_down(a, d)).min(div_down(b, c)).min(div_down(b, d));
        let hi = div_up(a, c).max(div_up(a, d)).max(div_up(b, c)).max(div_up(b, d));
        finite(lo, hi)
    }

    pub fn recip(self) -> Result<Interval> {
        Interval::ONE.div(self)
    }

    pub fn sqr(self) -> Result<Interval> {
        self.powi(2)
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Interval { lo: 0.0, hi: self.mag() }
        }
    }

    pub fn max(self, other: Interval) -> Interval {
        Interval { lo: self.lo.max(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn min(self, other: Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.min(other.hi) }
    }
}

/// Whether the decimal literal `s` denotes exactly the binary64 value `x`.
fn decimal_is_exact(s: &str, x: f64) -> bool {
    // Every finite binary64 has a terminating decimal expansion of at most
    // 1074 fractional digits; compare it with the normalized literal.
    normalize_decimal(&format!("{:.1100}", x)) == normalize_decimal(s)
}

fn normalize_decimal(s: &str) -> Option<(bool, String, i64)> {
    let s = s.trim();
    let (neg, s) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = match mantissa.find('.') {
        Some(i) => (&mantissa[..i], &mantissa[i + 1..]),
        None => (mantissa, ""),
    };
    if !int.bytes().chain(frac.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let exp = exp - frac.len() as i64;
    let trimmed_lead = digits.trim_start_matches('0');
    if trimmed_lead.is_empty() {
        return Some((false, "0".into(), 0));
    }
    let trimmed = trimmed_lead.trim_end_matches('0');
    let exp = exp + (trimmed_lead.len() - trimmed.len()) as i64;
    Some((neg, trimmed.to_string(), exp))
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

trait IntoOperand {
    fn operand(self) -> Result<Interval>;
}

impl IntoOperand for Interval {
    #[inline]
    fn operand(self) -> Result<Interval> {
        Ok(self)
    }
}

impl IntoOperand for Result<Interval> {
    #[inline]
    fn operand(self) -> Result<Interval> {
        self
    }
}

impl IntoOperand for f64 {
    #[inline]
    fn operand(self) -> Result<Interval> {
        Interval::point(self)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $($lhs:ty, $rhs:ty);*) => {
        $(
            impl $trait<$rhs> for $lhs {
                type Output = Result<Interval>;
                #[inline]
                fn $method(self, rhs: $rhs) -> Result<Interval> {
                    let a = self.operand()?;
                    let b = rhs.operand()?;
                    Interval::$method(a, b)
                }
            }
        )*
    };
}

macro_rules! all_binops {
    ($($trait:ident, $method:ident);*) => {
        $(
            binop!($trait, $method,
                Interval, Interval;
                Interval, Result<Interval>;
                Interval, f64;
                Result<Interval>, Interval;
                f64, Interval);
        )*
    };
}

all_binops!(Add, add; Sub, sub; Mul, mul; Div, div);
