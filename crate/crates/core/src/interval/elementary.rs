//! Elementary function enclosures.
//!
//! No platform math routine is trusted for a bound. Roots are approximated in
//! plain arithmetic and the candidate endpoints are then verified by
//! directed-rounded powering. Trigonometric functions use Taylor kernels with
//! alternating-series remainders, evaluated at the endpoints and combined by
//! monotonicity on `[0, π/2)`.

use super::constants;
use super::round::*;
use super::Interval;
use crate::error::{Error, Result};

impl Interval {
    /// Enclosure of `{x^k : x ∈ self}`. Even powers of a sign-straddling
    /// interval have lower endpoint exactly zero. Thin inputs give a width of
    /// at most `2|k| + 1` ulp.
    pub fn powi(self, k: i32) -> Result<Interval> {
        if k < 0 {
            if self.contains_zero() {
                return Err(Error::DivisionByZeroInterval);
            }
            return self.powi(-k)?.recip();
        }
        let k = k as u32;
        if k == 0 {
            return Ok(Interval::ONE);
        }
        let (lo, hi) = (self.lo(), self.hi());
        let r = if lo >= 0.0 {
            (powi_nonneg_down(lo, k), powi_nonneg_up(hi, k))
        } else if hi <= 0.0 {
            let (a, b) = (powi_nonneg_down(-hi, k), powi_nonneg_up(-lo, k));
            if k % 2 == 0 {
                (a, b)
            } else {
                (-b, -a)
            }
        } else if k % 2 == 0 {
            (0.0, powi_nonneg_up(self.mag(), k))
        } else {
            (-powi_nonneg_up(-lo, k), powi_nonneg_up(hi, k))
        };
        Interval::new(r.0, r.1).map_err(|_| Error::OverflowToNonFinite)
    }

    /// Thin inputs give a width of at most 1 ulp.
    pub fn sqrt(self) -> Result<Interval> {
        if self.lo() < 0.0 {
            return Err(Error::NegativeBase);
        }
        Interval::new(sqrt_down(self.lo()), sqrt_up(self.hi()))
    }

    /// Thin inputs give a width of at most 2 ulp.
    pub fn cbrt(self) -> Result<Interval> {
        if self.lo() < 0.0 {
            return Err(Error::NegativeBase);
        }
        Interval::new(cbrt_down(self.lo()), cbrt_up(self.hi()))
    }

    /// q-th root for `q ∈ {2, 3}`.
    pub fn root(self, q: u32) -> Result<Interval> {
        match q {
            2 => self.sqrt(),
            3 => self.cbrt(),
            _ => Err(Error::DomainNotSupported(format!("root of order {q}"))),
        }
    }

    /// Enclosure of `{x^(p/q) : x ∈ self}` for `q ∈ {2, 3}` and `self ≥ 0`.
    /// Thin inputs give a width of at most `5|p| + 3` ulp.
    pub fn rational_pow(self, p: i32, q: u32) -> Result<Interval> {
        if self.lo() < 0.0 {
            return Err(Error::NegativeBase);
        }
        self.root(q)?.powi(p)
    }

    pub fn sin(self) -> Result<Interval> {
        check_trig_domain(self, "sin", false)?;
        Interval::new(sin_point(self.lo())?.lo(), sin_point(self.hi())?.hi())
    }

    pub fn cos(self) -> Result<Interval> {
        check_trig_domain(self, "cos", false)?;
        Interval::new(cos_point(self.hi())?.lo(), cos_point(self.lo())?.hi())
    }

    pub fn tan(self) -> Result<Interval> {
        check_trig_domain(self, "tan", true)?;
        let lo = (sin_point(self.lo())? / cos_point(self.lo())?)?;
        let hi = (sin_point(self.hi())? / cos_point(self.hi())?)?;
        Interval::new(lo.lo(), hi.hi())
    }

    /// Arctangent on `[0, f64::MAX]`.
    pub fn atan(self) -> Result<Interval> {
        if self.lo() < 0.0 {
            return Err(Error::DomainNotSupported(format!("atan of {self:?}: negative argument")));
        }
        Interval::new(atan_point(self.lo())?.lo(), atan_point(self.hi())?.hi())
    }
}

fn check_trig_domain(x: Interval, name: &str, strict: bool) -> Result<()> {
    let half_pi = constants::half_pi();
    let ok = x.lo() >= 0.0
        && if strict { x.hi() < half_pi.lo() } else { x.hi() <= half_pi.hi() };
    if ok {
        Ok(())
    } else {
        Err(Error::DomainNotSupported(format!("{name} of {x:?}: supported on [0, pi/2)")))
    }
}

/// Plain-arithmetic cube root guess (Newton from an exponent-based start).
fn cbrt_guess(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64 - 1023;
    let mut y = 2f64.powi((exp / 3) as i32);
    for _ in 0..200 {
        let next = y - (y * y * y - x) / (3.0 * y * y);
        if next == y {
            break;
        }
        y = next;
    }
    y
}

fn cube_up(y: f64) -> f64 {
    powi_nonneg_up(y, 3)
}

fn cube_down(y: f64) -> f64 {
    powi_nonneg_down(y, 3)
}

/// Largest verified `y` with `y³ ≤ x` near the true root; `x ≥ 0`.
fn cbrt_down(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut y = cbrt_guess(x);
    while cube_up(next_up(y)) <= x {
        y = next_up(y);
    }
    while cube_up(y) > x {
        y = next_down(y);
    }
    y
}

/// Smallest verified `y` with `y³ ≥ x` near the true root; `x ≥ 0`.
fn cbrt_up(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut y = cbrt_guess(x);
    while cube_down(next_down(y)) >= x {
        y = next_down(y);
    }
    while cube_down(y) < x {
        y = next_up(y);
    }
    y
}

/// Number of Taylor terms for sin/cos on `[0, 1.6]`: the first omitted term
/// is below `1.6^27/27! < 1e-22`.
const TRIG_TERMS: usize = 14;

/// Alternating series `Σ (-1)^k t_k` whose terms obey `t_{k+1} = t_k * q_k(x)`
/// and decrease in magnitude; returns the partial sum plus the remainder
/// enclosure set by the first omitted term.
fn alternating_sum(first: Interval, terms: usize, mut next: impl FnMut(Interval, usize) -> Result<Interval>) -> Result<Interval> {
    let mut sum = Interval::ZERO;
    let mut term = first;
    for k in 0..terms {
        sum = if k % 2 == 0 { (sum + term)? } else { (sum - term)? };
        term = next(term, k)?;
    }
    // First omitted term has sign (-1)^terms.
    let tail = Interval::new(0.0, term.hi().max(0.0))?;
    if terms % 2 == 0 {
        sum + tail
    } else {
        sum - tail
    }
}

/// Enclosure of `sin(x)` for a binary64 `x ∈ [0, 1.6]`.
pub(crate) fn sin_point(x: f64) -> Result<Interval> {
    if !(0.0..=1.6).contains(&x) {
        return Err(Error::DomainNotSupported(format!("sin kernel at {x}")));
    }
    if x == 0.0 {
        return Ok(Interval::ZERO);
    }
    let xi = Interval::point(x)?;
    let x2 = xi.sqr()?;
    let s = alternating_sum(xi, TRIG_TERMS, |t, k| {
        let den = ((2 * k + 2) * (2 * k + 3)) as f64;
        (t * x2)? / den
    })?;
    // sin x ≤ x and sin x ≥ 0 on this range.
    Interval::new(s.lo().max(0.0), s.hi().min(x))
}

/// Enclosure of `cos(x)` for a binary64 `x ∈ [0, 1.6]`.
pub(crate) fn cos_point(x: f64) -> Result<Interval> {
    if !(0.0..=1.6).contains(&x) {
        return Err(Error::DomainNotSupported(format!("cos kernel at {x}")));
    }
    if x == 0.0 {
        return Ok(Interval::ONE);
    }
    let x2 = Interval::point(x)?.sqr()?;
    let c = alternating_sum(Interval::ONE, TRIG_TERMS, |t, k| {
        let den = ((2 * k + 1) * (2 * k + 2)) as f64;
        (t * x2)? / den
    })?;
    Interval::new(c.lo(), c.hi().min(1.0))
}

/// Alternating Taylor series of atan for an interval inside `[0, 1/4]`.
fn atan_series(x: Interval) -> Result<Interval> {
    // 0.25^(2k+1)/(2k+1) < 1e-22 for k ≥ 18.
    const TERMS: usize = 20;
    let x2 = x.sqr()?;
    let mut sum = Interval::ZERO;
    let mut pow = x;
    for k in 0..TERMS {
        let term = (pow / (2 * k + 1) as f64)?;
        sum = if k % 2 == 0 { (sum + term)? } else { (sum - term)? };
        pow = (pow * x2)?;
    }
    let tail = Interval::new(0.0, (pow / (2 * TERMS + 1) as f64)?.hi())?;
    if TERMS % 2 == 0 {
        sum + tail
    } else {
        sum - tail
    }
}

/// Enclosure of `atan(x)` for a binary64 `x ≥ 0`.
pub(crate) fn atan_point(x: f64) -> Result<Interval> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::DomainNotSupported(format!("atan kernel at {x}")));
    }
    if x == 0.0 {
        return Ok(Interval::ZERO);
    }
    if x > 1.0 {
        // atan x = π/2 - atan(1/x)
        let inv = Interval::point(x)?.recip()?;
        return constants::half_pi() - atan_reduced(inv)?;
    }
    atan_reduced(Interval::point(x)?)
}

/// atan for an interval inside `[0, 1]`, halving the argument with
/// `atan x = 2 atan(x / (1 + sqrt(1 + x²)))` until it is at most 1/4.
fn atan_reduced(x: Interval) -> Result<Interval> {
    let mut arg = x;
    let mut scale = 1.0;
    while arg.hi() > 0.25 {
        let root = (arg.sqr()? + 1.0)?.sqrt()?;
        arg = (arg / (root + 1.0))?;
        scale *= 2.0;
    }
    atan_series(arg)? * scale
}
