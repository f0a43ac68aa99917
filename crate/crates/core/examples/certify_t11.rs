//! Certifies the narrow-triangle margin C₁ - C₁C₂α - C₂α^{1/3} > 0 on
//! [1e-6, 33/100] by adaptive bisection, then probes it past 33/100.
//!
//! cargo run --release --example certify_t11

use polya::certifier::{certify_t11, t11_probe, DEFAULT_MAX_DEPTH};

fn main() -> polya::Result<()> {
    let cert = certify_t11(DEFAULT_MAX_DEPTH, 1)?;
    let deepest = cert.cells.iter().map(|c| c.depth).max().unwrap_or(0);
    println!(
        "t11: passed={} covered={} leaves={} deepest={} min margin {:.3e}",
        cert.passed,
        cert.covered,
        cert.cells.len(),
        deepest,
        cert.min_value().unwrap_or(f64::NAN)
    );
    for alpha in [0.30, 0.33, 0.34, 0.35, 0.36] {
        let m = t11_probe(alpha, 1e-4)?;
        let sign = if m.lo() > 0.0 {
            "positive"
        } else if m.hi() < 0.0 {
            "negative"
        } else {
            "indeterminate"
        };
        println!("alpha {alpha:.2}: margin in [{:+.4e}, {:+.4e}] {sign}", m.lo(), m.hi());
    }
    Ok(())
}
