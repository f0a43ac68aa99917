//! Torsion of circular sectors.

use crate::error::{Error, Result};
use crate::interval::constants::{half_pi, pi};
use crate::shapes::Sector;
use crate::Interval;

/// Torsion function of the infinite sector of opening `beta`,
/// `(r²/4)(cos 2φ / cos β - 1)`.
pub fn sector_torsion_pointwise(r: Interval, phi: Interval, beta: Interval) -> Result<Interval> {
    if beta.lo() <= 0.0 || beta.hi() >= half_pi().lo() {
        return Err(Error::DomainNotSupported(format!("sector opening {beta:?} outside (0, pi/2)")));
    }
    if r.lo() < 0.0 {
        return Err(Error::DomainNotSupported(format!("negative radius {r:?}")));
    }
    let half = (beta / 2.0)?;
    if phi.mag() > half.hi() {
        return Err(Error::DomainNotSupported(format!("angle {phi:?} outside |phi| <= beta/2")));
    }
    let c = ((phi * 2.0)?.abs().cos()? / beta.cos()?)?;
    let v = ((r.sqr()? / 4.0)? * (c - 1.0)?)?;
    // nonnegative on the admissible set
    Interval::new(v.lo().max(0.0), v.hi().max(0.0))
}

/// Truncated odd series `Σ_{k=0..N} (2k+1)⁻²(2k+1+x)⁻²(2k+1-x)⁻¹` with
/// `x = 2α/π`, together with the thin tail value `1/(2⁷N⁴)` that bounds the
/// remainder from above.
pub fn odd_series(alpha: Interval, terms: u32) -> Result<(Interval, Interval)> {
    if terms == 0 {
        return Err(Error::DomainNotSupported("series needs at least one term".into()));
    }
    let x = ((alpha * 2.0)? / pi())?;
    let mut sum = Interval::ZERO;
    // smallest terms first
    for k in (0..=terms).rev() {
        let n = Interval::point(f64::from(2 * k + 1))?;
        let term = (n.sqr()? * (n + x)?.sqr()?)?;
        let term = (term * (n - x)?)?.recip()?;
        sum = (sum + term)?;
    }
    let n4 = Interval::point(f64::from(terms))?.powi(4)?;
    let tail = (n4 * 128.0)?.recip()?;
    Ok((sum, tail))
}

/// Two-sided enclosure of the torsional rigidity of the sector `s`,
/// `(ρ⁴/16)[tan α - α - (128α⁴/π⁵) Σ_odd n⁻²(n+2α/π)⁻²(n-2α/π)⁻¹]`.
pub fn sector_torsion_enclosure(s: &Sector, terms: u32) -> Result<Interval> {
    let alpha = s.alpha;
    if alpha.lo() <= 0.0 || alpha.hi() >= half_pi().lo() {
        return Err(Error::DomainNotSupported(format!("sector opening {alpha:?} outside (0, pi/2)")));
    }
    let (partial, tail) = odd_series(alpha, terms)?;
    let series = (partial + Interval::new(0.0, tail.hi())?)?;
    let coeff = ((alpha.powi(4)? * 128.0)? / pi().powi(5)?)?;
    let bracket = ((alpha.tan()? - alpha)? - (coeff * series)?)?;
    (s.rho.powi(4)? / 16.0)? * bracket
}

/// `(n + 2α/π)²(n - 2α/π) - (25/27)n³`, nonnegative for `α ≤ π/3`, with
/// equality at `n = 1`, `α = π/3`.
///
/// With `x = 2α/π ∈ (0, 2/3]` the map `x ↦ (1+x)²(1-x)` rises on `[0, 1/3]`
/// and falls afterwards, so over the whole range its minimum is at the end
/// `x = 2/3`, where it is exactly 25/27. For `n ≥ 2` the same scaling
/// argument with `x/n ≤ 1/3` gives a larger margin.
pub fn denominator_margin(alpha: Interval, n: u32) -> Result<Interval> {
    let x = ((alpha * 2.0)? / pi())?;
    let n = Interval::point(f64::from(n))?;
    let lhs = ((n + x)?.sqr()? * (n - x)?)?;
    lhs - (n.powi(3)? * Interval::ratio(25, 27)?)?
}
