//! JSON and CSV encodings of certificates. Every binary64 is written as its
//! 16-digit hexadecimal bit pattern so that files round-trip exactly.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CellRecord, Certificate, Comparison, Strategy};
use crate::error::{Error, Result};
use crate::interval::constants::{hex_f64, parse_hex_f64};
use crate::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "csv" => Ok(ExportFormat::Csv),
            _ => Err(Error::Parse(format!("unknown export format {s:?}"))),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Json => "json",
            ExportFormat::Csv => "csv",
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CellDoc {
    lo: String,
    hi: String,
    value_lo: Option<String>,
    value_hi: Option<String>,
    pass: bool,
    depth: u32,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    claim_id: String,
    range: [String; 2],
    strategy: Strategy,
    comparison: Comparison,
    threshold: String,
    terms: u32,
    max_depth: u32,
    passed: bool,
    covered: bool,
    config_digest: String,
    toolchain_note: String,
    cells: Vec<CellDoc>,
}

impl From<&CellRecord> for CellDoc {
    fn from(c: &CellRecord) -> Self {
        CellDoc {
            lo: hex_f64(c.cell.lo()),
            hi: hex_f64(c.cell.hi()),
            value_lo: c.value.map(|v| hex_f64(v.lo())),
            value_hi: c.value.map(|v| hex_f64(v.hi())),
            pass: c.pass,
            depth: c.depth,
        }
    }
}

impl TryFrom<CellDoc> for CellRecord {
    type Error = Error;
    fn try_from(d: CellDoc) -> Result<Self> {
        let value = match (d.value_lo, d.value_hi) {
            (Some(a), Some(b)) => Some(Interval::new(parse_hex_f64(&a)?, parse_hex_f64(&b)?)?),
            (None, None) => None,
            _ => return Err(Error::Parse("half-specified cell value".into())),
        };
        Ok(CellRecord {
            cell: Interval::new(parse_hex_f64(&d.lo)?, parse_hex_f64(&d.hi)?)?,
            value,
            pass: d.pass,
            depth: d.depth,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    index: usize,
    lo: String,
    hi: String,
    value_lo: String,
    value_hi: String,
    pass: bool,
    depth: u32,
    lo_dec: f64,
    hi_dec: f64,
}

impl Certificate {
    pub fn to_json(&self) -> Result<String> {
        let doc = CertificateDoc {
            claim_id: self.claim_id.clone(),
            range: [hex_f64(self.range[0]), hex_f64(self.range[1])],
            strategy: self.strategy,
            comparison: self.comparison,
            threshold: hex_f64(self.threshold),
            terms: self.terms,
            max_depth: self.max_depth,
            passed: self.passed,
            covered: self.covered,
            config_digest: self.config_digest.clone(),
            toolchain_note: self.toolchain_note.clone(),
            cells: self.cells.iter().map(CellDoc::from).collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CertificateDoc = serde_json::from_str(text)?;
        Ok(Certificate {
            claim_id: doc.claim_id,
            range: [parse_hex_f64(&doc.range[0])?, parse_hex_f64(&doc.range[1])?],
            strategy: doc.strategy,
            comparison: doc.comparison,
            threshold: parse_hex_f64(&doc.threshold)?,
            terms: doc.terms,
            max_depth: doc.max_depth,
            passed: doc.passed,
            covered: doc.covered,
            config_digest: doc.config_digest,
            toolchain_note: doc.toolchain_note,
            cells: doc.cells.into_iter().map(CellRecord::try_from).collect::<Result<_>>()?,
        })
    }

    /// One row per cell; hex columns are authoritative, decimal columns are
    /// for reading.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for (index, c) in self.cells.iter().enumerate() {
            let d = CellDoc::from(c);
            w.serialize(CsvRow {
                index,
                lo: d.lo,
                hi: d.hi,
                value_lo: d.value_lo.unwrap_or_default(),
                value_hi: d.value_hi.unwrap_or_default(),
                pass: c.pass,
                depth: c.depth,
                lo_dec: c.cell.lo(),
                hi_dec: c.cell.hi(),
            })
            .map_err(|e| Error::IoFailure(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::IoFailure(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::IoFailure(e.to_string()))
    }

    /// Cells back from [`Certificate::to_csv`].
    pub fn cells_from_csv(text: &str) -> Result<Vec<CellRecord>> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        r.deserialize::<CsvRow>()
            .map(|row| {
                let row = row.map_err(|e| Error::Parse(e.to_string()))?;
                let opt = |s: String| if s.is_empty() { None } else { Some(s) };
                CellRecord::try_from(CellDoc {
                    lo: row.lo,
                    hi: row.hi,
                    value_lo: opt(row.value_lo),
                    value_hi: opt(row.value_hi),
                    pass: row.pass,
                    depth: row.depth,
                })
            })
            .collect()
    }

    pub fn export(&self, format: ExportFormat) -> Result<String> {
        match format {
            ExportFormat::Json => self.to_json(),
            ExportFormat::Csv => self.to_csv(),
        }
    }
}

/// `cert_<claim_id>_<digest>.<ext>`
pub fn certificate_file_name(c: &Certificate, format: ExportFormat) -> String {
    format!("cert_{}_{}.{}", c.claim_id, c.config_digest, format)
}

/// Writes the certificate into `dir` and returns the path.
pub fn write_certificate(c: &Certificate, dir: &Path, format: ExportFormat) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(certificate_file_name(c, format));
    std::fs::write(&path, c.export(format)?)?;
    Ok(path)
}
