//! λM for the disc, the square and the equilateral triangle of equal area,
//! extrapolated from two grid resolutions. The products should increase in
//! that order.
//!
//! cargo run --release --example e7_ordering [-- <cells across>]

use std::time::Instant;

use polya::oracle::{extrapolate, BoundaryTreatment, ConvexRegion, SolverConfig};

fn main() -> polya::Result<()> {
    let n: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(128.0);
    let cfg = SolverConfig::default();
    let s = 1.0;
    let r = (1.0 / std::f64::consts::PI).sqrt();
    let e = (4.0 / 3f64.sqrt()).sqrt();
    let shapes = [
        ("disc", ConvexRegion::disc(r), 2.0 * r / n),
        ("square", ConvexRegion::rect(s, s)?, s / n),
        ("equilateral", equilateral(e)?, e / n),
    ];
    let mut rows = Vec::new();
    for (name, region, h) in shapes {
        let t0 = Instant::now();
        let x = extrapolate(&region, h, 2, BoundaryTreatment::Ghost, &cfg)?;
        println!(
            "{name:12} lambda*M = {:.6} +- {:.1e}   lambda = {:.6} +- {:.1e}   M = {:.6}  ({:.1?})",
            x.lambda_m.extrapolated,
            x.lambda_m.error_indicator,
            x.lambda.extrapolated,
            x.lambda.error_indicator,
            x.m.extrapolated,
            t0.elapsed()
        );
        rows.push((name, x.lambda_m));
    }
    for w in rows.windows(2) {
        let gap = w[1].1.extrapolated - w[0].1.extrapolated;
        let noise = 3.0 * (w[0].1.error_indicator + w[1].1.error_indicator);
        println!("{} < {}: gap {:.2e} vs 3x indicators {:.2e}", w[0].0, w[1].0, gap, noise);
    }
    Ok(())
}

fn equilateral(side: f64) -> polya::Result<ConvexRegion> {
    let spec = format!("equilateral:s={side}").parse()?;
    ConvexRegion::from_shape(&spec)
}
