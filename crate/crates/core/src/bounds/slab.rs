//! Upper bounds for `λM` of convex sets given width and section inradius.

use serde::Serialize;

use super::{BoundKind, BoundResult, Quantity};
use crate::error::{Error, Result};
use crate::interval::constants::{bessel_zero, pi};
use crate::shapes::ConvexSlabSpec;
use crate::Interval;

/// `j_{(m-3)/2}`, available for `m ∈ {2, 3, 4}`.
pub fn section_bessel_zero(m: u32) -> Result<Interval> {
    match m {
        2..=4 => bessel_zero(m as i32 - 3),
        _ => Err(Error::UnsupportedOrder(format!("no Bessel zero enclosure for dimension {m}"))),
    }
}

/// `d_m = 7(m+1)^{4/3}π⁻²j²_{(m-3)/2}`
pub fn d_m(m: u32) -> Result<Interval> {
    let j = section_bessel_zero(m)?;
    let p = Interval::int(m as i32 + 1).rational_pow(4, 3)?;
    ((p * 7.0)? * j.sqr()?)? / pi().sqr()?
}

/// Separation-of-variables bound `π²/z² + (1 - z/w)⁻²λ_c` for a cylinder of
/// height `z ∈ (0, w)`.
pub fn lambda_upper_e18(w: Interval, lambda_c: Interval, z: Interval) -> Result<Interval> {
    let a = (pi().sqr()? / z.sqr()?)?;
    let b = (lambda_c / (1.0 - (z / w)?)?.sqr()?)?;
    a + b
}

/// Minimizing height `1/z = 1/w + (λ_c/(π²w))^{1/3}`.
pub fn optimal_height(w: Interval, lambda_c: Interval) -> Result<Interval> {
    let t = (lambda_c / (pi().sqr()? * w)?)?.cbrt()?;
    (w.recip()? + t)?.recip()
}

/// Four-term bound `(π²/w²)(1 + 3X^{1/3} + 3X^{2/3} + X)`, `X = λ_c w²/π²`.
pub fn lambda_upper_e20(w: Interval, lambda_c: Interval) -> Result<Interval> {
    let x = ((lambda_c * w.sqr()?)? / pi().sqr()?)?;
    let c = x.cbrt()?;
    let poly = ((((c * 3.0)? + 1.0)? + (c.sqr()? * 3.0)?)? + x)?;
    (pi().sqr()? / w.sqr()?)? * poly
}

/// `(m+1)² j² / w²`, from the Blaschke-type inradius bound `w/(m+1)`.
pub fn lambda_c_upper_blaschke(m: u32, w: Interval) -> Result<Interval> {
    let j = section_bessel_zero(m)?;
    (Interval::int(m as i32 + 1).sqr()? * j.sqr()?)? / w.sqr()?
}

/// `j² / ρ²` from a section disc of radius `ρ`.
pub fn lambda_c_upper_inradius(m: u32, rho: Interval) -> Result<Interval> {
    let j = section_bessel_zero(m)?;
    j.sqr()? / rho.sqr()?
}

/// Seven-fold simplification `(π²/w²)(1 + 7K^{2/3}X^{1/3})` with
/// `K = (m+1)²j²/π²`; valid whenever `λ_c` obeys the Blaschke bound.
pub fn lambda_upper_e26(m: u32, w: Interval, lambda_c: Interval) -> Result<Interval> {
    let j = section_bessel_zero(m)?;
    let k = ((Interval::int(m as i32 + 1).sqr()? * j.sqr()?)? / pi().sqr()?)?;
    let x = ((lambda_c * w.sqr()?)? / pi().sqr()?)?;
    let corr = ((k.rational_pow(2, 3)? * x.cbrt()?)? * 7.0)?;
    (pi().sqr()? / w.sqr()?)? * (corr + 1.0)?
}

/// All the `λM` upper bounds that follow from the argument, for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlabChains {
    /// `(π²/8)(1 + d_m(w/ρ)^{2/3})`
    pub closed_form: Interval,
    /// `w²/8` times the four-term bound with `λ_c` from the section inradius.
    pub four_term_inradius: Interval,
    /// `w²/8` times the four-term bound with `λ_c` from the Blaschke bound.
    pub four_term_blaschke: Interval,
}

pub fn theorem1_chains(s: &ConvexSlabSpec) -> Result<SlabChains> {
    let m8 = (s.w.sqr()? / 8.0)?;
    let lc_rho = lambda_c_upper_inradius(s.m, s.rho_section)?;
    let lc_bl = lambda_c_upper_blaschke(s.m, s.w)?;
    Ok(SlabChains {
        closed_form: closed_form(s)?,
        four_term_inradius: (m8 * lambda_upper_e20(s.w, lc_rho)?)?,
        four_term_blaschke: (m8 * lambda_upper_e20(s.w, lc_bl)?)?,
    })
}

fn closed_form(s: &ConvexSlabSpec) -> Result<Interval> {
    let ratio = (s.w / s.rho_section)?.rational_pow(2, 3)?;
    let base = (pi().sqr()? / 8.0)?;
    base * ((d_m(s.m)? * ratio)? + 1.0)?
}

/// `λ(Ω)M(Ω) ≤ (π²/8)(1 + d_m (w/ρ)^{2/3})`.
pub fn theorem1_upper(s: &ConvexSlabSpec) -> Result<BoundResult> {
    let value = closed_form(s)?;
    Ok(BoundResult::new("e15", BoundKind::UpperBound, Quantity::LambdaM, value)
        .param("m", Interval::int(s.m as i32))
        .param("w", s.w)
        .param("rho", s.rho_section))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d2_closed_form() {
        let d = d_m(2).unwrap();
        let expect = ((Interval::int(3).rational_pow(4, 3).unwrap() * 7.0).unwrap() / 4.0).unwrap();
        assert!(d.intersects(&expect));
        assert!(d.width() < 1e-13);
    }

    #[test]
    fn unsupported_dimension() {
        assert!(matches!(d_m(5), Err(Error::UnsupportedOrder(_))));
        let s = ConvexSlabSpec::new(7, Interval::ONE, Interval::ONE).unwrap();
        assert!(theorem1_upper(&s).is_err());
    }

    #[test]
    fn slab_limit() {
        let s = ConvexSlabSpec::new(3, Interval::ONE, Interval::point(1e12).unwrap()).unwrap();
        let b = theorem1_upper(&s).unwrap();
        let base = (pi().sqr().unwrap() / 8.0).unwrap();
        assert!(b.value.lo() >= base.lo() && b.value.hi() - base.hi() < 1e-6);
    }

    #[test]
    fn e20_is_e18_at_optimum() {
        let w = Interval::from_decimal("1.5").unwrap();
        let lc = Interval::from_decimal("3.7").unwrap();
        let z = optimal_height(w, lc).unwrap();
        let at_opt = lambda_upper_e18(w, lc, z).unwrap();
        let four = lambda_upper_e20(w, lc).unwrap();
        assert!(at_opt.intersects(&four), "{at_opt:?} {four:?}");
        for zz in ["0.3", "0.9", "1.2"] {
            let other = lambda_upper_e18(w, lc, Interval::from_decimal(zz).unwrap()).unwrap();
            assert!(other.hi() >= four.lo());
        }
    }

    #[test]
    fn chains_ordered() {
        for m in 2..=4 {
            for (w, rho) in [(1.0, 2.0), (1.0, 50.0), (0.3, 0.4)] {
                let s = ConvexSlabSpec::new(m, Interval::point(w).unwrap(), Interval::point(rho).unwrap()).unwrap();
                let c = theorem1_chains(&s).unwrap();
                // the seven-fold step only loosens the four-term inradius chain
                assert!(c.four_term_inradius.lo() <= c.closed_form.hi(), "{m} {w} {rho} {c:?}");
                let lc = lambda_c_upper_inradius(m, s.rho_section).unwrap();
                let e26 = lambda_upper_e26(m, s.w, lc).unwrap();
                let e20 = lambda_upper_e20(s.w, lc).unwrap();
                assert!(e20.lo() <= e26.hi());
            }
        }
    }
}
