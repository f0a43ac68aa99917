//! Certified lower and upper bounds for λT/|Ω| against the extrapolated
//! finite-difference ratio, for isosceles triangles and rhombi over a range
//! of angles.
//!
//! cargo run --release --example sandwich_sweep [-- <points> <cells across>]

use std::time::Instant;

use polya::bounds::{
    rhombus_ratio_lower, rhombus_ratio_upper, triangle_ratio_lower_wide, triangle_ratio_upper,
};
use polya::interval::constants::pi;
use polya::oracle::{extrapolate, BoundaryTreatment, ConvexRegion, SolverConfig};
use polya::shapes::{IsoscelesTriangle, Normalization, Rhombus};
use polya::Interval;

fn main() -> polya::Result<()> {
    let mut args = std::env::args().skip(1);
    let points: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let across: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(32.0);
    let cfg = SolverConfig::default();
    let top = (pi() / 3.0)?.lo();
    println!("shape,beta,lower_lo,ratio,indicator,upper_hi,inside,seconds");
    for k in 0..points {
        let beta = 0.05 + (top - 0.05) * k as f64 / (points - 1) as f64;
        let b = Interval::point(beta)?;

        let t = IsoscelesTriangle::from_beta(b, Normalization::Base2)?;
        let lo = triangle_ratio_lower_wide(&t)?;
        let hi = triangle_ratio_upper(&t)?;
        let region = ConvexRegion::polygon("triangle", &t.vertices_mid()?)?;
        let h = t.d()?.mid().min(2.0) / across;
        row("triangle", beta, &region, h, lo.value, hi.value, &cfg)?;

        let r = Rhombus::new(b)?;
        let lo = rhombus_ratio_lower(&r)?;
        let hi = rhombus_ratio_upper(&r)?;
        let region = ConvexRegion::polygon("rhombus", &r.vertices_mid()?)?;
        let h = r.d()?.mid() / across;
        row("rhombus", beta, &region, h, lo.value, hi.value, &cfg)?;
    }
    Ok(())
}

fn row(name: &str, beta: f64, region: &ConvexRegion, h: f64, lo: Interval, hi: Interval, cfg: &SolverConfig) -> polya::Result<()> {
    let t0 = Instant::now();
    let x = extrapolate(region, h, 2, BoundaryTreatment::Ghost, cfg)?;
    let tol = (0.01 * x.ratio.extrapolated).max(5.0 * x.ratio.error_indicator);
    let inside = lo.lo() - tol <= x.ratio.extrapolated && x.ratio.extrapolated <= hi.hi() + tol;
    println!(
        "{name},{beta:.6},{:.6},{:.6},{:.1e},{:.6},{inside},{:.2}",
        lo.lo(),
        x.ratio.extrapolated,
        x.ratio.error_indicator,
        hi.hi(),
        t0.elapsed().as_secs_f64()
    );
    Ok(())
}
