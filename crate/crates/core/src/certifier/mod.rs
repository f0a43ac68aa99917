//! Branch-and-bound certification over interval coverings.
//!
//! A claim `f(x) > t` (or `≥ t`) for every real `x` in a range is certified
//! by covering the range with closed cells and checking the claim on the
//! interval enclosure of `f` over each cell. The result is a
//! [`Certificate`] listing every cell, its enclosure and verdict, which can
//! be exported and re-checked.

mod claims;
mod export;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::interval::constants::hex_f64;
use crate::Interval;

pub use claims::{
    certify_t11, certify_theorem4, certify_theorem5_part2, t11_probe, Claim, ClaimParams, T11_RANGE_LO,
};
pub use export::{certificate_file_name, write_certificate, ExportFormat};

pub const DEFAULT_MAX_DEPTH: u32 = 24;
pub const MAX_DEPTH_LIMIT: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Fixed covering by `N + 1` overlapping cells `midrad(lo + nΔ, Δ)`.
    UniformMidrad,
    /// Starts from a uniform covering and bisects failing cells.
    AdaptiveBisect,
}

/// How a cell enclosure is compared with the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    /// `value.lo > threshold`
    Strict,
    /// `value.lo >= threshold`
    NonStrict,
}

impl Comparison {
    pub fn holds(self, value: Interval, threshold: f64) -> bool {
        match self {
            Comparison::Strict => value.lo() > threshold,
            Comparison::NonStrict => value.lo() >= threshold,
        }
    }
}

/// One cell of a covering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellRecord {
    pub cell: Interval,
    /// `None` when the predicate could not be evaluated on the cell.
    pub value: Option<Interval>,
    pub pass: bool,
    /// Bisection depth below the initial covering.
    pub depth: u32,
}

/// Parameters that determine a certification run. Everything here enters
/// the configuration digest; the worker count does not.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyConfig {
    pub claim_id: String,
    /// Enclosures of the two range endpoints; the certified range is
    /// `[lo.lo, hi.hi]`.
    pub range: (Interval, Interval),
    pub threshold: f64,
    pub comparison: Comparison,
    pub strategy: Strategy,
    /// Number of subdivisions of the initial covering (`N + 1` cells for
    /// the uniform strategy, `N` abutting cells for adaptive).
    pub cells: u32,
    pub max_depth: u32,
    /// Series truncation passed through to the predicate, recorded only.
    pub terms: u32,
}

impl CertifyConfig {
    pub fn new(claim_id: &str, range: (Interval, Interval), threshold: f64) -> Self {
        CertifyConfig {
            claim_id: claim_id.to_string(),
            range,
            threshold,
            comparison: Comparison::Strict,
            strategy: Strategy::AdaptiveBisect,
            cells: 1,
            max_depth: DEFAULT_MAX_DEPTH,
            terms: 0,
        }
    }

    pub fn range_bounds(&self) -> [f64; 2] {
        [self.range.0.lo(), self.range.1.hi()]
    }

    /// SHA-256 over a canonical rendering of the configuration.
    pub fn digest(&self) -> String {
        let [lo, hi] = self.range_bounds();
        let canon = format!(
            "claim={};range={},{};threshold={};comparison={:?};strategy={:?};cells={};max_depth={};terms={}",
            self.claim_id,
            hex_f64(lo),
            hex_f64(hi),
            hex_f64(self.threshold),
            self.comparison,
            self.strategy,
            self.cells,
            self.max_depth,
            self.terms,
        );
        format!("{:x}", Sha256::digest(canon.as_bytes()))
    }
}

/// A machine-checkable record of a certification run.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub claim_id: String,
    pub range: [f64; 2],
    pub strategy: Strategy,
    pub comparison: Comparison,
    pub threshold: f64,
    pub terms: u32,
    pub max_depth: u32,
    pub cells: Vec<CellRecord>,
    pub passed: bool,
    pub covered: bool,
    pub config_digest: String,
    pub toolchain_note: String,
}

pub fn toolchain_note() -> String {
    format!(
        "polya {}; binary64 round-to-nearest with outward correction by error-free transforms",
        env!("CARGO_PKG_VERSION")
    )
}

impl Certificate {
    /// Cells that failed, in covering order.
    pub fn failures(&self) -> impl Iterator<Item = &CellRecord> {
        self.cells.iter().filter(|c| !c.pass)
    }

    /// Smallest lower endpoint over all evaluated cells.
    pub fn min_value(&self) -> Option<f64> {
        self.cells.iter().filter_map(|c| c.value.map(|v| v.lo())).reduce(f64::min)
    }

    /// Recomputes `passed` from the cells and the coverage check.
    pub fn recheck(&self) -> bool {
        let all = !self.cells.is_empty() && self.cells.iter().all(|c| c.pass);
        all && covers(&self.cells, self.range)
    }
}

/// Whether the union of `cells` (in order) contains `[range[0], range[1]]`.
pub fn covers(cells: &[CellRecord], range: [f64; 2]) -> bool {
    let (Some(first), Some(last)) = (cells.first(), cells.last()) else {
        return false;
    };
    first.cell.lo() <= range[0]
        && last.cell.hi() >= range[1]
        && cells.windows(2).all(|w| w[0].cell.hi() >= w[1].cell.lo())
}

/// Initial covering of the configured range.
fn initial_cells(cfg: &CertifyConfig) -> Result<Vec<Interval>> {
    let (lo, hi) = cfg.range;
    let n = cfg.cells.max(1);
    match cfg.strategy {
        Strategy::UniformMidrad => {
            // Δ as an interval; its upper endpoint is the cell radius
            let delta = ((hi - lo)? / f64::from(n))?;
            let r = delta.hi();
            let spread = Interval::new(-r, r)?;
            (0..=n)
                .map(|k| {
                    let center = (lo + (delta * f64::from(k))?)?;
                    center + spread
                })
                .collect()
        }
        Strategy::AdaptiveBisect => {
            let a = lo.lo();
            let b = hi.hi();
            let mut cuts = Vec::with_capacity(n as usize + 1);
            cuts.push(a);
            for k in 1..n {
                cuts.push(a + (b - a) * f64::from(k) / f64::from(n));
            }
            cuts.push(b);
            cuts.windows(2).map(|w| Interval::new(w[0], w[1])).collect()
        }
    }
}

fn evaluate<F>(f: &F, cell: Interval, cfg: &CertifyConfig, depth: u32, out: &mut Vec<CellRecord>)
where
    F: Fn(Interval) -> Result<Interval> + Sync,
{
    let value = f(cell).ok();
    let pass = value.is_some_and(|v| cfg.comparison.holds(v, cfg.threshold));
    let splittable = cell.lo() < cell.mid() && cell.mid() < cell.hi();
    if pass || cfg.strategy == Strategy::UniformMidrad || depth >= cfg.max_depth || !splittable {
        out.push(CellRecord { cell, value, pass, depth });
        return;
    }
    let (l, r) = cell.bisect();
    evaluate(f, l, cfg, depth + 1, out);
    evaluate(f, r, cfg, depth + 1, out);
}

/// Runs the covering for `cfg` with predicate `f` on `jobs` workers. The
/// recorded cell order is ascending regardless of the worker count.
pub fn certify_predicate<F>(cfg: &CertifyConfig, f: F, jobs: usize) -> Result<Certificate>
where
    F: Fn(Interval) -> Result<Interval> + Sync,
{
    let max_depth = cfg.max_depth.min(MAX_DEPTH_LIMIT);
    let cfg = CertifyConfig { max_depth, ..cfg.clone() };
    let roots = initial_cells(&cfg)?;
    let run = |cell: &Interval| {
        let mut out = Vec::new();
        evaluate(&f, *cell, &cfg, 0, &mut out);
        out
    };
    let groups: Vec<Vec<CellRecord>> = if jobs <= 1 {
        roots.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| crate::Error::IoFailure(e.to_string()))?;
        pool.install(|| roots.par_iter().map(run).collect())
    };
    let cells: Vec<CellRecord> = groups.into_iter().flatten().collect();
    let range = cfg.range_bounds();
    let covered = covers(&cells, range);
    let passed = covered && cells.iter().all(|c| c.pass);
    Ok(Certificate {
        claim_id: cfg.claim_id.clone(),
        range,
        strategy: cfg.strategy,
        comparison: cfg.comparison,
        threshold: cfg.threshold,
        terms: cfg.terms,
        max_depth: cfg.max_depth,
        cells,
        passed,
        covered,
        config_digest: cfg.digest(),
        toolchain_note: toolchain_note(),
    })
}
