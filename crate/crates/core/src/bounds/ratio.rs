//! Upper and lower bounds for the Pólya ratio `λT/|Ω|` of isosceles
//! triangles and rhombi.

use serde::Serialize;

use super::sector::odd_series;
use super::{at_most, BoundKind, BoundResult, Quantity};
use crate::error::{Error, Result};
use crate::interval::constants::{half_pi, pi, table};
use crate::shapes::{IsoscelesTriangle, Normalization, Rhombus};
use crate::Interval;

/// `π²/24`, the conjectured sharp lower constant.
pub fn pi2_over_24() -> Result<Interval> {
    pi().sqr()? / 24.0
}

fn third_pi() -> Result<Interval> {
    pi() / 3.0
}

/// Upper end of the narrow-triangle range where the Airy/Siudeja estimate
/// is certified.
pub fn narrow_alpha_max() -> Interval {
    Interval::ratio(33, 100).expect("constant ratio")
}

/// `(π²/24)(1 + c·tan^{2/3}β)`
fn tan_correction(beta: Interval, c: i32) -> Result<Interval> {
    let t = beta.tan()?.rational_pow(2, 3)?;
    pi2_over_24()? * ((t * f64::from(c))? + 1.0)?
}

/// Upper bound `(π²/24)(1 + 81 tan^{2/3}β)` for the isosceles triangle with
/// base angles `β`; a theorem for `β ≤ π/3`.
pub fn triangle_ratio_upper(t: &IsoscelesTriangle) -> Result<BoundResult> {
    let beta = t.beta()?;
    let value = tan_correction(beta, 81)?;
    let ok = at_most(beta, third_pi()?);
    Ok(BoundResult::new("e28", BoundKind::UpperBound, Quantity::PolyaRatio, value)
        .param("beta", beta)
        .require(ok, || format!("beta {beta:?} exceeds pi/3")))
}

/// Upper bound `(π²/24)(1 + 15 tan^{2/3}β)` for the rhombus with acute
/// angle `β`; a theorem for `β ≤ π/3`.
pub fn rhombus_ratio_upper(r: &Rhombus) -> Result<BoundResult> {
    let beta = r.beta;
    if beta.hi() >= half_pi().lo() {
        return Err(Error::DomainNotSupported(format!("tan beta unbounded on {beta:?}")));
    }
    let value = tan_correction(beta, 15)?;
    let third = third_pi()?;
    Ok(BoundResult::new("e28a", BoundKind::UpperBound, Quantity::PolyaRatio, value)
        .param("beta", beta)
        .param("d", r.d()?)
        .require(at_most(beta, third), || format!("beta {beta:?} exceeds pi/3")))
}

/// Torsion upper bound `(1/8)(1+d²)²(d - arctan d)` for the base-2 triangle of
/// height `d`, from covering it by two sectors.
pub fn triangle_torsion_upper(d: Interval) -> Result<Interval> {
    let r4 = (d.sqr()? + 1.0)?.sqr()?;
    (r4 / 8.0)? * (d - d.atan()?)?
}

/// Cubic relaxation `d³(1+d²)²/24` of [`triangle_torsion_upper`].
pub fn triangle_torsion_upper_cubic(d: Interval) -> Result<Interval> {
    (d.powi(3)? * (d.sqr()? + 1.0)?.sqr()?)? / 24.0
}

/// Intermediate product `(π²/24)(1+d²)²(1 + 7(d/2)^{2/3})` before the
/// relaxation to the `81 tan^{2/3}β` form.
pub fn triangle_upper_chain(d: Interval) -> Result<Interval> {
    let lam = ((d / 2.0)?.rational_pow(2, 3)? * 7.0)? + 1.0;
    (pi2_over_24()? * (d.sqr()? + 1.0)?.sqr()?)? * lam?
}

/// Torsion upper bound `(1/8)R⁴(tan β - β)`, `R² = 1 + d²/4`, for the rhombus
/// with diagonals 2 and `d`.
pub fn rhombus_torsion_upper(r: &Rhombus) -> Result<Interval> {
    let d = r.d()?;
    let r4 = ((d.sqr()? / 4.0)? + 1.0)?.sqr()?;
    (r4 / 8.0)? * (r.beta.tan()? - r.beta)?
}

/// Intermediate product `(π²/24)(1+d²/4)²(1+9d²/32)(1 + 7(d/2)^{2/3})`.
///
/// Only the final `tan β` form is claimed for every `β ≤ π/3`; the
/// `(d/2)^{2/3}` relaxation in between does not hold past `d ≈ 0.97`.
pub fn rhombus_upper_chain(d: Interval) -> Result<Interval> {
    let d2 = d.sqr()?;
    let a = ((d2 / 4.0)? + 1.0)?.sqr()?;
    let b = (((d2 * 9.0)? / 32.0)? + 1.0)?;
    let c = (((d / 2.0)?.rational_pow(2, 3)? * 7.0)? + 1.0)?;
    ((pi2_over_24()? * a)? * b)? * c
}

fn check_rhombus_d(d: Interval) -> Result<()> {
    if d.lo() <= 0.0 || d.hi() > 2.0 {
        return Err(Error::DomainNotSupported(format!("rhombus diagonal {d:?} outside (0, 2]")));
    }
    Ok(())
}

/// Test-function torsion lower bound `d³/(24 + 18d²)` for the rhombus.
pub fn rhombus_torsion_lower(d: Interval) -> Result<Interval> {
    check_rhombus_d(d)?;
    d.powi(3)? / ((d.sqr()? * 18.0)? + 24.0)?
}

/// Eigenvalue lower bound `π²(16+24d²+d⁴)/(d²(16+4d²))` from the Steiner
/// symmetrized rectangle.
pub fn rhombus_lambda_lower(d: Interval) -> Result<Interval> {
    check_rhombus_d(d)?;
    let d2 = d.sqr()?;
    let num = (((d2 * 24.0)? + 16.0)? + d.powi(4)?)?;
    let den = (d2 * ((d2 * 4.0)? + 16.0)?)?;
    (pi().sqr()? * num)? / den
}

/// `(16+24d²+d⁴)/((1+3d²/4)(16+4d²))` as printed.
pub fn rhombus_factor(d: Interval) -> Result<Interval> {
    check_rhombus_d(d)?;
    let d2 = d.sqr()?;
    let num = (((d2 * 24.0)? + 16.0)? + d.powi(4)?)?;
    let den = ((((d2 * 3.0)? / 4.0)? + 1.0)? * ((d2 * 4.0)? + 16.0)?)?;
    num / den
}

/// The same factor minus one, rearranged as `2d²(4-d²)/((1+3d²/4)(16+4d²))`
/// so that the square `d = 2` gives an exact zero endpoint.
pub fn rhombus_factor_minus_one(d: Interval) -> Result<Interval> {
    check_rhombus_d(d)?;
    let d2 = d.sqr()?;
    let num = ((d2 * 2.0)? * (4.0 - d2)?)?;
    let den = ((((d2 * 3.0)? / 4.0)? + 1.0)? * ((d2 * 4.0)? + 16.0)?)?;
    num / den
}

/// Lower bound `(π²/24)(16+24d²+d⁴)/((1+3d²/4)(16+4d²))` for every rhombus
/// with diagonals 2 and `d ∈ (0, 2]`.
pub fn rhombus_ratio_lower(r: &Rhombus) -> Result<BoundResult> {
    let d = r.d()?;
    check_rhombus_d(d)?;
    let factor = (rhombus_factor_minus_one(d)? + 1.0)?;
    let value = (pi2_over_24()? * factor)?;
    Ok(BoundResult::new("e28b", BoundKind::LowerBound, Quantity::PolyaRatio, value)
        .param("beta", r.beta)
        .param("d", d))
}

/// The two factors of the wide-triangle lower bound and the branch of the
/// eigenvalue minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WideFactors {
    /// `π²(1 + 1/d²)`
    pub lambda_lower: Interval,
    /// `4π²/d²`, the other candidate of the minimum
    pub lambda_alternative: Interval,
    /// `(1/24)(1 + 1/d²)⁻¹`, a lower bound for `T/|Ω|`
    pub torsion_ratio_lower: Interval,
    /// `Some(true)` when `π²(1+1/d²) ≤ 4π²/d²` is certified, `Some(false)`
    /// when the reverse strict inequality is, `None` if undecided.
    pub first_branch_is_min: Option<bool>,
}

pub fn wide_factors(d: Interval) -> Result<WideFactors> {
    let pi2 = pi().sqr()?;
    let inv = d.sqr()?.recip()?;
    let lambda_lower = (pi2 * (inv + 1.0)?)?;
    let lambda_alternative = ((pi2 * 4.0)? * inv)?;
    let torsion_ratio_lower = ((inv + 1.0)? * 24.0)?.recip()?;
    let first_branch_is_min = if lambda_lower.hi() <= lambda_alternative.lo() {
        Some(true)
    } else if lambda_lower.lo() > lambda_alternative.hi() {
        Some(false)
    } else {
        None
    };
    Ok(WideFactors { lambda_lower, lambda_alternative, torsion_ratio_lower, first_branch_is_min })
}

/// Torsion lower bound `d³/(24(1+d²))` from the piecewise quadratic test
/// function on the base-2 triangle.
pub fn triangle_torsion_lower_wide(d: Interval) -> Result<Interval> {
    d.powi(3)? / ((d.sqr()? + 1.0)? * 24.0)?
}

/// Lower bound `π²/24` for wide triangles (`β ≤ π/3`). The two factors
/// cancel exactly, so the value is the `π²/24` enclosure itself; the
/// factors are attached as parameters.
pub fn triangle_ratio_lower_wide(t: &IsoscelesTriangle) -> Result<BoundResult> {
    let beta = t.beta()?;
    let d = t.d()?;
    let f = wide_factors(d)?;
    let ok = at_most(beta, third_pi()?);
    let base2 = t.normalization == Normalization::Base2;
    Ok(BoundResult::new("wide", BoundKind::LowerBound, Quantity::PolyaRatio, pi2_over_24()?)
        .param("beta", beta)
        .param("d", d)
        .param("lambda_lower", f.lambda_lower)
        .param("torsion_ratio_lower", f.torsion_ratio_lower)
        .require(ok, || format!("beta {beta:?} exceeds pi/3"))
        .require(base2, || "wide bound is stated for the base-2 normalization".into()))
}

fn check_apex(alpha: Interval) -> Result<()> {
    if alpha.lo() <= 0.0 || alpha.hi() >= half_pi().lo() {
        return Err(Error::DomainNotSupported(format!("apex angle {alpha:?} outside (0, pi/2)")));
    }
    Ok(())
}

/// Lower bound for `j²_{π/α}` in its Airy form `(π/α)²(1 + C(α/π)^{2/3})²`.
pub fn bessel_square_lower_airy(alpha: Interval) -> Result<Interval> {
    let q = (alpha / pi())?;
    let corr = ((q.rational_pow(2, 3)? * table().airy_c)? + 1.0)?;
    (q.recip()? * corr)?.sqr()
}

/// Weaker lower bound `(π/α)²(1 + C₁α^{2/3})` for `j²_{π/α}`.
pub fn bessel_square_lower(alpha: Interval) -> Result<Interval> {
    let corr = ((alpha.rational_pow(2, 3)? * table().c1)? + 1.0)?;
    (pi() / alpha)?.sqr()? * corr
}

/// Eigenvalue lower bound `α tan(α/2) j²_{π/α} / 2` for the base-2 triangle,
/// via comparison with the sector of equal area and opening.
pub fn siudeja_lambda_lower(alpha: Interval) -> Result<Interval> {
    check_apex(alpha)?;
    let s = ((alpha * (alpha / 2.0)?.tan()?)? / 2.0)?;
    s * bessel_square_lower(alpha)?
}

/// Torsion lower bound `(α³ρ⁴/48)(1 - C₂α)` for the base-2 triangle, with
/// `ρ² = 2/(α tan(α/2))` the equal-area sector radius.
pub fn narrow_torsion_lower(alpha: Interval) -> Result<Interval> {
    check_apex(alpha)?;
    let rho2 = (Interval::int(2) / (alpha * (alpha / 2.0)?.tan()?)?)?;
    let lead = ((alpha.powi(3)? * rho2.sqr()?)? / 48.0)?;
    lead * (1.0 - (table().c2 * alpha)?)?
}

/// Lower bound `(π²/24)(1 - C₂α)(1 + C₁α^{2/3})` for narrow triangles with
/// apex `α`; a theorem for `α ≤ 33/100`.
pub fn triangle_ratio_lower_narrow(alpha: Interval) -> Result<BoundResult> {
    check_apex(alpha)?;
    let c = table();
    let a = (1.0 - (c.c2 * alpha)?)?;
    let b = ((c.c1 * alpha.rational_pow(2, 3)?)? + 1.0)?;
    let value = ((pi2_over_24()? * a)? * b)?;
    let max = narrow_alpha_max();
    Ok(BoundResult::new("finalestimate", BoundKind::LowerBound, Quantity::PolyaRatio, value)
        .param("alpha", alpha)
        .param("lambda_lower", siudeja_lambda_lower(alpha)?)
        .param("torsion_lower", narrow_torsion_lower(alpha)?)
        .require(at_most(alpha, max), || format!("alpha {alpha:?} exceeds 33/100")))
}

/// `C₁ - C₁C₂α - C₂α^{1/3}`; a positive lower endpoint certifies that the
/// narrow bound is at least `π²/24` on the whole cell.
pub fn t11_margin(alpha: Interval) -> Result<Interval> {
    if alpha.lo() < 0.0 {
        return Err(Error::DomainNotSupported(format!("negative angle {alpha:?}")));
    }
    let c = table();
    let a = ((c.c1 * c.c2)? * alpha)?;
    let b = (c.c2 * alpha.cbrt()?)?;
    (c.c1 - a)? - b
}

/// `λ̃(α) = cos²(α/2)(α/sin α)(π/α + C(π/α)^{1/3})²`, an eigenvalue lower
/// bound for the height-1 triangle.
pub fn lambda_tilde(alpha: Interval) -> Result<Interval> {
    check_apex(alpha)?;
    let p = (pi() / alpha)?;
    let inner = (p + (table().airy_c * p.cbrt()?)?)?.sqr()?;
    let c2 = (alpha / 2.0)?.cos()?.sqr()?;
    ((c2 * (alpha / alpha.sin()?)?)?) * inner
}

/// `T̃(α) = (tan α - α)/16 - (8/π⁵)α⁴(S_N + 1/(2⁷N⁴))`, the torsion lower
/// value of the tangent sector of the height-1 triangle.
pub fn torsion_tilde(alpha: Interval, terms: u32) -> Result<Interval> {
    check_apex(alpha)?;
    let (sum, tail) = odd_series(alpha, terms)?;
    let lead = ((alpha.tan()? - alpha)? / 16.0)?;
    let coeff = ((alpha.powi(4)? * 8.0)? / pi().powi(5)?)?;
    lead - (coeff * (sum + tail)?)?
}

/// Area `tan(α/2)` of the height-1 triangle.
pub fn area_height1(alpha: Interval) -> Result<Interval> {
    check_apex(alpha)?;
    (alpha / 2.0)?.tan()
}

/// `G(α) = (24/π²) λ̃(α) T̃(α) / tan(α/2)`, whose lower endpoint bounds the
/// normalized Pólya ratio of the height-1 triangle from below.
pub fn g_enclosure(alpha: Interval, terms: u32) -> Result<Interval> {
    let t = torsion_tilde(alpha, terms)?;
    let l = lambda_tilde(alpha)?;
    let scale = (Interval::int(24) / pi().sqr()?)?;
    ((scale * t)? * l)? / area_height1(alpha)?
}
