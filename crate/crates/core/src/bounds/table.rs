//! Every bound applicable to a parsed shape, and the certified sandwich for
//! `λT/|Ω|` picked from them.

use super::ratio::{g_enclosure, pi2_over_24};
use super::{
    auxiliary_published_bounds, rhombus_ratio_lower, rhombus_ratio_upper, sector_torsion_enclosure,
    theorem1_upper, triangle_ratio_lower_narrow, triangle_ratio_lower_wide, triangle_ratio_upper, BoundKind,
    BoundResult, Published, Quantity,
};
use crate::error::Result;
use crate::interval::constants::pi;
use crate::shapes::{ConvexSlabSpec, ShapeKind, ShapeSpec};
use crate::Interval;

/// Default series truncation for bounds that need one.
pub const DEFAULT_TERMS: u32 = 10;

/// Tags [`bounds_for`] can produce.
pub const KNOWN_TAGS: [&str; 12] = [
    "e28",
    "wide",
    "finalestimate",
    "g_lower",
    "e28a",
    "e28b",
    "e15",
    "e4_cm",
    "e11_slab",
    "e12_planar",
    "e33_lambda_upper",
    "sector_torsion",
];

fn g_lower(alpha: Interval, terms: u32) -> Result<BoundResult> {
    let g = g_enclosure(alpha, terms)?;
    let lo = super::ratio::narrow_alpha_max();
    let hi = (pi() / 3.0)?;
    Ok(BoundResult::new("g_lower", BoundKind::LowerBound, Quantity::PolyaRatio, (pi2_over_24()? * g)?)
        .param("alpha", alpha)
        .param("G", g)
        .param("terms", Interval::int(terms as i32))
        .require(alpha.lo() >= lo.lo() && super::at_most(alpha, hi), || {
            format!("alpha {alpha:?} outside [33/100, pi/3]")
        }))
}

fn planar(w: f64, diam: f64) -> Result<BoundResult> {
    auxiliary_published_bounds(Published::E12Planar { w: Interval::point(w)?, diam: Interval::point(diam)? })
}

/// All bounds that make sense for `spec`, in a fixed order. Rows outside
/// their hypotheses are included with `valid = false`.
pub fn bounds_for(spec: &ShapeSpec, terms: u32) -> Result<Vec<BoundResult>> {
    let cm = || auxiliary_published_bounds(Published::E4Cm { m: 2 });
    let mut rows = Vec::new();
    match &spec.kind {
        ShapeKind::Triangle(t) => {
            rows.push(triangle_ratio_upper(t)?);
            rows.push(triangle_ratio_lower_wide(t)?);
            if t.alpha.hi() < std::f64::consts::FRAC_PI_2 {
                rows.push(triangle_ratio_lower_narrow(t.alpha)?);
            }
            if let Ok(g) = g_lower(t.alpha, terms) {
                rows.push(g);
            }
            rows.push(cm()?);
            rows.push(auxiliary_published_bounds(Published::E33LambdaUpper { d: t.d()? })?);
        }
        ShapeKind::Rhombus(r) => {
            rows.push(rhombus_ratio_upper(r)?);
            rows.push(rhombus_ratio_lower(r)?);
            rows.push(cm()?);
        }
        ShapeKind::Sector(s) => {
            let t = sector_torsion_enclosure(s, terms.max(1))?;
            for kind in [BoundKind::LowerBound, BoundKind::UpperBound] {
                rows.push(
                    BoundResult::new("sector_torsion", kind, Quantity::Torsion, t)
                        .param("rho", s.rho)
                        .param("alpha", s.alpha),
                );
            }
            rows.push(cm()?);
        }
        ShapeKind::Slab(s) => {
            rows.push(theorem1_upper(s)?);
            rows.push(auxiliary_published_bounds(Published::E4Cm { m: s.m })?);
        }
        ShapeKind::Rect { a, b } => {
            let (long, short) = if a >= b { (*a, *b) } else { (*b, *a) };
            let slab = ConvexSlabSpec::new(2, Interval::point(short)?, (Interval::point(long)? / 2.0)?)?;
            rows.push(theorem1_upper(&slab)?);
            rows.push(cm()?);
            let n = (Interval::point(long)? / Interval::point(2.0 * short)?)?;
            if n.lo() >= 1.0 {
                rows.push(auxiliary_published_bounds(Published::E11Slab { m: 2, n })?);
            }
            rows.push(planar(short, long.hypot(short))?);
        }
        ShapeKind::Disc { r } => {
            rows.push(cm()?);
            rows.push(planar(2.0 * r, 2.0 * r)?);
        }
        ShapeKind::Square { s } => {
            rows.push(cm()?);
            rows.push(planar(*s, s * std::f64::consts::SQRT_2)?);
        }
        ShapeKind::Equilateral { s } => {
            rows.push(cm()?);
            rows.push(planar(s * 3f64.sqrt() / 2.0, *s)?);
        }
    }
    Ok(rows)
}

/// Best valid lower and upper bounds on `λT/|Ω|` among `rows`: the largest
/// lower endpoint and the smallest upper endpoint.
pub fn polya_sandwich(rows: &[BoundResult]) -> (Option<&BoundResult>, Option<&BoundResult>) {
    let ratio = |k: BoundKind| {
        rows.iter()
            .filter(move |r| r.valid && r.kind == k && r.quantity == Quantity::PolyaRatio)
    };
    let lower = ratio(BoundKind::LowerBound).max_by(|a, b| a.value.lo().total_cmp(&b.value.lo()));
    let upper = ratio(BoundKind::UpperBound).min_by(|a, b| a.value.hi().total_cmp(&b.value.hi()));
    (lower, upper)
}
