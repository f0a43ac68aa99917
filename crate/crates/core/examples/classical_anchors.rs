//! Finite-difference solves on the disc and the square against their exact
//! values, and the bound λT/|Ω| < 1 on a handful of convex shapes.
//!
//! cargo run --release --example classical_anchors

use polya::constants::bessel_zero;
use polya::oracle::{disc_exact, solve_region, solve_shape, BoundaryTreatment, ConvexRegion, SolverConfig};

fn main() -> polya::Result<()> {
    let cfg = SolverConfig::default();
    let r = 1.0;
    let disc = solve_shape(&"disc:r=1".parse()?, r / 128.0, BoundaryTreatment::Ghost, &cfg)?;
    let (_, m) = disc_exact(r);
    let j = bessel_zero(0)?;
    let j2 = j.sqr()?;
    println!(
        "disc h=R/128: M {:.6} vs {:.6} ({:+.2e} rel), lambda {:.6} vs j0^2 in [{:.9}, {:.9}]",
        disc.m_est,
        m,
        disc.m_est / m - 1.0,
        disc.lambda_est.unwrap(),
        j2.lo(),
        j2.hi()
    );
    let sq = solve_shape(&"square:s=1".parse()?, 1.0 / 64.0, BoundaryTreatment::Ghost, &cfg)?;
    let exact = 2.0 * std::f64::consts::PI.powi(2);
    println!("square h=1/64: lambda {:.6} vs 2pi^2 {:.6} ({:+.2e} rel)", sq.lambda_est.unwrap(), exact, sq.lambda_est.unwrap() / exact - 1.0);

    for s in ["disc:r=1", "square:s=1", "equilateral:s=1", "rect:a=6,b=1", "triangle:beta=0.3", "rhombus:beta=0.4", "sector:rho=1,alpha=1.2"] {
        let region = ConvexRegion::from_shape(&s.parse()?)?;
        let [x0, y0, x1, y1] = region.bbox;
        let h = (x1 - x0).min(y1 - y0) / 48.0;
        let sol = solve_region(region, h, BoundaryTreatment::Ghost, &cfg)?;
        println!("{s:<24} lambda*T/|Omega| = {:.6}", sol.ratio().unwrap());
    }
    Ok(())
}
