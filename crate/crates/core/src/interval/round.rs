//! Directed rounding emulated on top of round-to-nearest.
//!
//! Each operation computes the nearest result and recovers the exact rounding
//! error with an error-free transformation (TwoSum, or an FMA residual). The
//! result is nudged one ulp outward only when that error points outward, so
//! exact operations stay exact. Close to the subnormal range the residuals are
//! no longer exact and the nudge becomes unconditional.

/// Below this magnitude FMA residuals may be inexact.
const TINY: f64 = 1.0e-290;

#[inline]
pub fn next_up(x: f64) -> f64 {
    x.next_up()
}

#[inline]
pub fn next_down(x: f64) -> f64 {
    x.next_down()
}

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) < 0.0 {
        next_down(s)
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) > 0.0 {
        next_up(s)
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// Sign of the exact `a*b - p`, or `None` when the residual cannot be trusted.
#[inline]
fn mul_residual_sign(a: f64, b: f64, p: f64) -> Option<f64> {
    if a == 0.0 || b == 0.0 {
        return Some(0.0);
    }
    if p.abs() < TINY {
        return None;
    }
    Some(a.mul_add(b, -p))
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    match mul_residual_sign(a, b, p) {
        Some(e) if e >= 0.0 => p,
        _ => next_down(p),
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    match mul_residual_sign(a, b, p) {
        Some(e) if e <= 0.0 => p,
        _ => next_up(p),
    }
}

/// Sign of the exact `a/b - q`, or `None` when it cannot be recovered.
#[inline]
fn div_residual_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if a == 0.0 {
        return Some(0.0);
    }
    if q.abs() < TINY || a.abs() < TINY {
        return None;
    }
    // a - q*b is exact here, and a/b - q has the sign of (a - q*b)/b.
    let r = (-q).mul_add(b, a);
    Some(if b > 0.0 { r } else { -r })
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_residual_sign(a, b, q) {
        Some(e) if e >= 0.0 => q,
        _ => next_down(q),
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_residual_sign(a, b, q) {
        Some(e) if e <= 0.0 => q,
        _ => next_up(q),
    }
}

/// Requires `x >= 0`.
#[inline]
pub fn sqrt_down(x: f64) -> f64 {
    let s = x.sqrt();
    if x == 0.0 {
        return 0.0;
    }
    if s < TINY.sqrt() {
        return next_down(s).max(0.0);
    }
    let r = (-s).mul_add(s, x);
    if r < 0.0 {
        next_down(s)
    } else {
        s
    }
}

/// Requires `x >= 0`.
#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    let s = x.sqrt();
    if x == 0.0 {
        return 0.0;
    }
    if s < TINY.sqrt() {
        return next_up(s);
    }
    let r = (-s).mul_add(s, x);
    if r > 0.0 {
        next_up(s)
    } else {
        s
    }
}

/// `x^k` rounded down, for `x >= 0`.
pub fn powi_nonneg_down(x: f64, k: u32) -> f64 {
    let (mut acc, mut base, mut e) = (1.0, x, k);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_down(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = mul_down(base, base);
        }
    }
    acc
}

/// `x^k` rounded up, for `x >= 0`.
pub fn powi_nonneg_up(x: f64, k: u32) -> f64 {
    let (mut acc, mut base, mut e) = (1.0, x, k);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_up(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = mul_up(base, base);
        }
    }
    acc
}
