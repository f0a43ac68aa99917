//! Certifies that the rhombus lower-bound factor is at least 1 on d ∈ [1e-6, 2],
//! with equality at the square d = 2.
//!
//! cargo run --release --example certify_theorem4 [-- <cells>]

use polya::bounds::ratio::{rhombus_factor, rhombus_factor_minus_one};
use polya::certifier::{certify_theorem4, DEFAULT_MAX_DEPTH};
use polya::Interval;

fn main() -> polya::Result<()> {
    let cells: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let cert = certify_theorem4(cells, DEFAULT_MAX_DEPTH, 1)?;
    let last = cert.cells.last().expect("nonempty covering");
    let v = last.value.expect("evaluated");
    println!("theorem4: passed={} covered={} leaves={}", cert.passed, cert.covered, cert.cells.len());
    println!(
        "last cell [{}, {}] factor - 1 in [{:e}, {:e}], contains 0: {}",
        last.cell.lo(),
        last.cell.hi(),
        v.lo(),
        v.hi(),
        v.contains(0.0)
    );
    // the printed and rearranged forms agree
    for d in [0.1, 0.5, 1.0, 1.5, 2.0] {
        let x = Interval::point(d)?;
        let printed = (rhombus_factor(x)? - 1.0)?;
        let rearranged = rhombus_factor_minus_one(x)?;
        println!("d={d}: printed {:.3e} width {:.1e}, rearranged {:.3e} width {:.1e}", printed.mid(), printed.width(), rearranged.mid(), rearranged.width());
    }
    Ok(())
}
