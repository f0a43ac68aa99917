//! Certified constants.
//!
//! π comes from Machin's identity `π/4 = 4 atan(1/5) - atan(1/239)` with the
//! arctangent series summed in exact rational arithmetic and bracketed by its
//! alternating remainder, then rounded outward to binary64. The remaining
//! constants are interval evaluations of their defining formulas.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::round::{next_down, next_up};
use super::Interval;
use crate::error::{Error, Result};

/// `[lower, upper]` bracket of `atan(1/q)` from `terms` series terms.
fn atan_inv_bracket(q: i64, terms: usize) -> (BigRational, BigRational) {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut sum = BigRational::zero();
    let mut pow = q.clone();
    for k in 0..terms {
        let term = BigRational::new(BigInt::one(), &pow * BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow *= &q2;
    }
    let next = BigRational::new(BigInt::one(), &pow * BigInt::from(2 * terms + 1));
    if terms % 2 == 0 {
        let hi = &sum + next;
        (sum, hi)
    } else {
        let lo = &sum - next;
        (lo, sum)
    }
}

/// Largest binary64 `≤ r`.
fn rational_floor_f64(r: &BigRational) -> f64 {
    let mut x = r.to_f64().unwrap_or(0.0);
    while BigRational::from_float(x).is_some_and(|v| &v > r) {
        x = next_down(x);
    }
    while BigRational::from_float(next_up(x)).is_some_and(|v| &v <= r) {
        x = next_up(x);
    }
    x
}

/// Smallest binary64 `≥ r`.
fn rational_ceil_f64(r: &BigRational) -> f64 {
    let mut x = r.to_f64().unwrap_or(0.0);
    while BigRational::from_float(x).is_some_and(|v| &v < r) {
        x = next_up(x);
    }
    while BigRational::from_float(next_down(x)).is_some_and(|v| &v >= r) {
        x = next_down(x);
    }
    x
}

fn machin_pi() -> Interval {
    // 1/5^(2k+1) falls below 1e-40 at k = 29.
    let (a_lo, a_hi) = atan_inv_bracket(5, 30);
    let (b_lo, b_hi) = atan_inv_bracket(239, 12);
    let sixteen = BigRational::from_integer(BigInt::from(16));
    let four = BigRational::from_integer(BigInt::from(4));
    let lo = &sixteen * a_lo - &four * b_hi;
    let hi = &sixteen * a_hi - &four * b_lo;
    Interval::new(rational_floor_f64(&lo), rational_ceil_f64(&hi)).expect("π bracket is finite")
}

/// Enclosure of π.
pub fn pi() -> Interval {
    static PI: OnceLock<Interval> = OnceLock::new();
    *PI.get_or_init(machin_pi)
}

/// Enclosure of π/2 (exact halving of the π enclosure).
pub fn half_pi() -> Interval {
    let p = pi();
    Interval::new(p.lo() * 0.5, p.hi() * 0.5).expect("finite")
}

/// Number of explicit terms in the ζ(5) partial sum.
pub const ZETA5_TERMS: u64 = 1000;

/// `Σ n⁻⁵` as partial sum of `N` terms plus the integral tail enclosure
/// `[1/(4(N+1)⁴), 1/(4N⁴)]`.
pub fn zeta5_with_terms(n: u64) -> Result<Interval> {
    if n == 0 {
        return Err(Error::DomainNotSupported("zeta5 needs at least one term".into()));
    }
    // Smallest terms first.
    let mut sum = Interval::ZERO;
    for k in (1..=n).rev() {
        sum = (sum + Interval::point(k as f64)?.powi(5)?.recip()?)?;
    }
    let nf = n as f64;
    let tail_lo = (Interval::point(nf + 1.0)?.powi(4)? * 4.0)?.recip()?.lo();
    let tail_hi = (Interval::point(nf)?.powi(4)? * 4.0)?.recip()?.hi();
    sum + Interval::new(tail_lo, tail_hi)?
}

pub fn zeta5_enclosure() -> Interval {
    table().zeta5
}

/// `ln 2 = 2 atanh(1/3) = 2 Σ 3^-(2k+1)/(2k+1)`, geometric tail.
fn ln2_enclosure() -> Result<Interval> {
    const TERMS: i32 = 30;
    let third = Interval::ratio(1, 3)?;
    let ninth = third.sqr()?;
    let mut sum = Interval::ZERO;
    let mut pow = third;
    for k in 0..TERMS {
        sum = (sum + pow / (2 * k + 1) as f64)?;
        pow = (pow * ninth)?;
    }
    // Remaining terms are at most pow/(2 TERMS + 1) * Σ 9^-j = pow * 9/8 / (2 TERMS + 1).
    let tail = ((pow * 9.0)? / (8.0 * (2 * TERMS + 1) as f64))?;
    (sum + Interval::new(0.0, tail.hi())?)? * 2.0
}

/// Airy constant `C = (9π/8)^(2/3) 2^(-1/3)`.
fn airy_c(pi: Interval) -> Result<Interval> {
    ((pi * 9.0)? / 8.0)?.rational_pow(2, 3)? * Interval::int(2).rational_pow(-1, 3)?
}

/// `C₁ = (9/4)^(2/3)`.
fn c1() -> Result<Interval> {
    Interval::ratio(9, 4)?.rational_pow(2, 3)
}

/// `C₂ = 2²·3⁴·31·ζ(5) / (5²·π⁵)`.
fn c2(pi: Interval, zeta5: Interval) -> Result<Interval> {
    (zeta5 * (4.0 * 81.0 * 31.0))? / (pi.powi(5)? * 25.0)
}

/// Partial Taylor sum of `J₀` or `J₁` at an interval argument with the
/// alternating remainder; the omitted tail decreases for arguments up to 20.
fn bessel_j(order: u32, x: Interval) -> Result<Interval> {
    const TERMS: usize = 40;
    if x.lo() < 0.0 || x.hi() > 20.0 {
        return Err(Error::DomainNotSupported(format!("bessel series at {x:?}")));
    }
    let q = (x.sqr()? / 4.0)?;
    // t_0 = (x/2)^order / order!
    let mut term = match order {
        0 => Interval::ONE,
        1 => (x / 2.0)?,
        _ => return Err(Error::UnsupportedOrder(format!("J_{order}"))),
    };
    let mut sum = Interval::ZERO;
    for k in 0..TERMS {
        sum = if k % 2 == 0 { (sum + term)? } else { (sum - term)? };
        let den = ((k + 1) * (k + 1 + order as usize)) as f64;
        term = ((term * q)? / den)?;
    }
    let tail = Interval::new(0.0, term.hi())?;
    if TERMS % 2 == 0 {
        sum + tail
    } else {
        sum - tail
    }
}

/// Certified enclosure of `j₀`, the first positive zero of `J₀`.
///
/// `J₀ > 0` is verified on `[0, 2.4]` by adaptive cell evaluation, `J₁ > 0`
/// on `[2.4, 2.41]` makes `J₀` decreasing there, and bisection keeps a left
/// end with `J₀ > 0` and a right end with `J₀ < 0`.
fn bessel_j0_zero() -> Result<Interval> {
    let (left, right) = (2.4, 2.41);
    if !positive_on(|c| bessel_j(0, c), Interval::new(0.0, left)?, 30)? {
        return Err(Error::NonConvergence { iterations: 0, residual: f64::NAN });
    }
    if !bessel_j(1, Interval::new(left, right)?)?.is_positive() {
        return Err(Error::NonConvergence { iterations: 0, residual: f64::NAN });
    }
    let sign = |x: f64| -> Result<Option<bool>> {
        let v = bessel_j(0, Interval::point(x)?)?;
        Ok(if v.is_positive() {
            Some(true)
        } else if v.lt(0.0) {
            Some(false)
        } else {
            None
        })
    };
    let (mut a, mut b) = (left, right);
    if sign(a)? != Some(true) || sign(b)? != Some(false) {
        return Err(Error::NonConvergence { iterations: 0, residual: f64::NAN });
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        match sign(m)? {
            Some(true) => a = m,
            Some(false) => b = m,
            None => break,
        }
    }
    Interval::new(a, b)
}

/// Whether `f` is certainly positive on every sub-cell of `range`, bisecting
/// down to `depth` levels.
pub(crate) fn positive_on(
    f: impl Fn(Interval) -> Result<Interval>,
    range: Interval,
    depth: u32,
) -> Result<bool> {
    let mut stack = vec![(range, 0)];
    while let Some((cell, d)) = stack.pop() {
        if f(cell)?.is_positive() {
            continue;
        }
        if d >= depth {
            return Ok(false);
        }
        let (l, r) = cell.bisect();
        stack.push((r, d + 1));
        stack.push((l, d + 1));
    }
    Ok(true)
}

/// Certified constants used by the bound evaluators.
#[derive(Debug, Clone)]
pub struct ConstantTable {
    pub pi: Interval,
    pub zeta5: Interval,
    pub ln2: Interval,
    /// `C = (9π/8)^(2/3) 2^(-1/3)`, the Airy-zero constant.
    pub airy_c: Interval,
    pub c1: Interval,
    pub c2: Interval,
    /// First positive zeros `j_ν` keyed by `2ν ∈ {-1, 0, 1}`.
    pub bessel_zero: BTreeMap<i32, Interval>,
}

impl ConstantTable {
    fn compute() -> Result<Self> {
        let pi = pi();
        let zeta5 = zeta5_with_terms(ZETA5_TERMS)?;
        let mut bessel_zero = BTreeMap::new();
        bessel_zero.insert(-1, half_pi());
        bessel_zero.insert(0, bessel_j0_zero()?);
        bessel_zero.insert(1, pi);
        Ok(ConstantTable {
            pi,
            zeta5,
            ln2: ln2_enclosure()?,
            airy_c: airy_c(pi)?,
            c1: c1()?,
            c2: c2(pi, zeta5)?,
            bessel_zero,
        })
    }

    /// Named entries in a stable order, for audit output.
    pub fn entries(&self) -> Vec<(String, Interval)> {
        let mut v = vec![
            ("pi".to_string(), self.pi),
            ("zeta5".to_string(), self.zeta5),
            ("ln2".to_string(), self.ln2),
            ("airy_C".to_string(), self.airy_c),
            ("C1".to_string(), self.c1),
            ("C2".to_string(), self.c2),
        ];
        for (twice_nu, z) in &self.bessel_zero {
            let name = match twice_nu {
                -1 => "j_-1/2".to_string(),
                0 => "j_0".to_string(),
                n => format!("j_{n}/2"),
            };
            v.push((name, *z));
        }
        v
    }

    /// `constants.json`: name → {lo_hex, hi_hex, lo_dec, hi_dec}.
    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, ConstantEntry> = self
            .entries()
            .into_iter()
            .map(|(k, v)| (k, ConstantEntry::from(v)))
            .collect();
        serde_json::to_string_pretty(&map).expect("constant table serializes")
    }
}

#[derive(Serialize)]
struct ConstantEntry {
    lo_hex: String,
    hi_hex: String,
    lo_dec: String,
    hi_dec: String,
}

impl From<Interval> for ConstantEntry {
    fn from(v: Interval) -> Self {
        ConstantEntry {
            lo_hex: hex_f64(v.lo()),
            hi_hex: hex_f64(v.hi()),
            lo_dec: format!("{:.17e}", v.lo()),
            hi_dec: format!("{:.17e}", v.hi()),
        }
    }
}

/// Bit-exact hexadecimal encoding of a binary64.
pub fn hex_f64(x: f64) -> String {
    format!("{:016x}", x.to_bits())
}

pub fn parse_hex_f64(s: &str) -> Result<f64> {
    let s = s.trim_start_matches("0x");
    u64::from_str_radix(s, 16)
        .map(f64::from_bits)
        .map_err(|_| Error::Parse(format!("bad hex float {s:?}")))
}

/// The process-wide constant table, computed once.
pub fn table() -> &'static ConstantTable {
    static TABLE: OnceLock<ConstantTable> = OnceLock::new();
    TABLE.get_or_init(|| ConstantTable::compute().expect("constant table evaluation"))
}

/// First positive zero of `J_ν` for `ν = twice_nu / 2 ∈ {-1/2, 0, 1/2}`.
pub fn bessel_zero(twice_nu: i32) -> Result<Interval> {
    table()
        .bessel_zero
        .get(&twice_nu)
        .copied()
        .ok_or_else(|| Error::UnsupportedOrder(format!("j_nu for nu = {twice_nu}/2")))
}
