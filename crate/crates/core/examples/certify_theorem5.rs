//! Covers [33/100, π/3] by 1001 overlapping cells and checks G(α) > 1.01 on
//! each, then repeats on a coarser covering.
//!
//! cargo run --release --example certify_theorem5

use std::time::Instant;

use polya::certifier::{certify_theorem5_part2, Strategy, ClaimParams};

fn main() -> polya::Result<()> {
    let t0 = Instant::now();
    let cert = certify_theorem5_part2(ClaimParams::default(), 1)?;
    let worst = cert
        .cells
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.value.map(|v| (i, v.lo())))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    println!(
        "cells={} passed={} covered={} worst cell #{} with G >= {:.6} ({:.2?})",
        cert.cells.len(),
        cert.passed,
        cert.covered,
        worst.0,
        worst.1,
        t0.elapsed()
    );
    println!("digest {}", cert.config_digest);

    for strategy in [Strategy::UniformMidrad, Strategy::AdaptiveBisect] {
        let p = ClaimParams { cells: 100, strategy, ..Default::default() };
        let c = certify_theorem5_part2(p, 1)?;
        println!(
            "N=100 {:?}: passed={} leaves={} failures={}",
            strategy,
            c.passed,
            c.cells.len(),
            c.failures().count()
        );
    }
    Ok(())
}
