//! Rectangle series against the slab bounds: λM ≤ π²/8 + 1/(8(n - 2/3)) on
//! (-n, n) × (0, 1), λT/|Ω| → π²/12 for thin rectangles, and the
//! convex-set bound dominating the exact rectangle λM.
//!
//! cargo run --example slab_limits

use polya::bounds::{auxiliary_published_bounds, theorem1_upper, Published};
use polya::oracle::rect_series;
use polya::shapes::ConvexSlabSpec;
use polya::Interval;

fn main() -> polya::Result<()> {
    for n in [1, 2, 4, 8] {
        let s = rect_series(2.0 * n as f64, 1.0, 200);
        let b = auxiliary_published_bounds(Published::E11Slab { m: 2, n: Interval::int(n) })?;
        let lm = s.lambda_exact * s.m;
        println!("n={n}: lambda*M = {lm:.6} <= {:.6}: {}", b.value.lo(), lm + s.lambda_exact * s.m_tail <= b.value.lo());
    }
    let s = rect_series(1000.0, 1.0, 200);
    let target = std::f64::consts::PI.powi(2) / 12.0;
    let ratio = s.lambda_exact * s.t / 1000.0;
    println!("aspect 1000: lambda*T/|Omega| = {ratio:.8}, pi^2/12 = {target:.8}, rel {:.2e}", ratio / target - 1.0);

    for aspect in [2.0, 5.0, 10.0, 100.0, 1000.0] {
        let s = rect_series(aspect, 1.0, 200);
        let lm = s.lambda_exact * s.m;
        let slab = ConvexSlabSpec::new(2, Interval::ONE, Interval::point(aspect / 2.0)?)?;
        let up = theorem1_upper(&slab)?;
        println!("aspect {aspect:>6}: lambda*M = {lm:.6} <= {:.6}", up.value.lo());
    }
    Ok(())
}
