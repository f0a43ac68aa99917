//! Writes a certificate as JSON and CSV, reads both back and re-checks the
//! covering from the files alone.
//!
//! cargo run --example export_certificate [-- <output dir>]

use std::path::PathBuf;

use polya::certifier::{certify_theorem4, write_certificate, Certificate, ExportFormat, DEFAULT_MAX_DEPTH};

fn main() -> polya::Result<()> {
    let dir: PathBuf = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("polya-certs"));
    std::fs::create_dir_all(&dir)?;
    let cert = certify_theorem4(16, DEFAULT_MAX_DEPTH, 1)?;
    let json = write_certificate(&cert, &dir, ExportFormat::Json)?;
    let csv = write_certificate(&cert, &dir, ExportFormat::Csv)?;
    println!("wrote {}\nwrote {}", json.display(), csv.display());

    let text = std::fs::read_to_string(&json)?;
    let back = Certificate::from_json(&text)?;
    println!("json round trip identical: {}", back == cert);
    println!("byte-identical re-export: {}", back.to_json()? == text);
    println!("recheck from file: {}", back.recheck());

    let cells = Certificate::cells_from_csv(&std::fs::read_to_string(&csv)?)?;
    println!("csv cells match: {}", cells == cert.cells);
    Ok(())
}
