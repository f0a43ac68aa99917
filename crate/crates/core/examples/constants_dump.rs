//! Dumps the certified constant table: each constant as decimal endpoints
//! and as the hex bit patterns used in certificates.
//!
//! cargo run --example constants_dump [-- --json]

use polya::constants::{hex_f64, table};

fn main() {
    let t = table();
    if std::env::args().any(|a| a == "--json") {
        println!("{}", t.to_json());
        return;
    }
    for (name, v) in t.entries() {
        println!("{name:<16} [{:.17e}, {:.17e}]  {} {}  width {:.1e}", v.lo(), v.hi(), hex_f64(v.lo()), hex_f64(v.hi()), v.width());
    }
}
