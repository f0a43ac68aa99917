//! Prints every certified bound for a few shapes, marking rows outside
//! their hypotheses, and the resulting sandwich for λT/|Ω|.
//!
//! cargo run --example bound_table [-- <shape spec>...]

use polya::bounds::{bounds_for, polya_sandwich, DEFAULT_TERMS};
use polya::shapes::ShapeSpec;

fn main() -> polya::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = ["triangle:beta=0.3", "triangle:beta=1.2", "triangle:alpha=0.2", "rhombus:beta=0.5", "sector:rho=1,alpha=0.6", "slab:m=3,w=0.01,rho=1", "rect:a=8,b=1"]
            .map(String::from)
            .to_vec();
    }
    for s in specs {
        let spec: ShapeSpec = s.parse()?;
        let rows = bounds_for(&spec, DEFAULT_TERMS)?;
        println!("{spec}");
        for r in &rows {
            println!(
                "  {:<18} {:?}/{:?} [{:.10}, {:.10}]{}",
                r.equation_tag,
                r.kind,
                r.quantity,
                r.value.lo(),
                r.value.hi(),
                r.reason.as_ref().map(|m| format!("  invalid: {m}")).unwrap_or_default()
            );
        }
        if let (Some(lo), Some(hi)) = polya_sandwich(&rows) {
            println!("  sandwich {:.6} ({}) <= lambda*T/|Omega| <= {:.6} ({})", lo.value.lo(), lo.equation_tag, hi.value.hi(), hi.equation_tag);
        }
    }
    Ok(())
}
