//! The concrete claims certified by the engine.

use std::fmt;
use std::str::FromStr;

use super::{certify_predicate, Certificate, CertifyConfig, Comparison, Strategy};
use crate::bounds::ratio::{g_enclosure, narrow_alpha_max, rhombus_factor_minus_one};
use crate::bounds::t11_margin;
use crate::error::{Error, Result};
use crate::interval::constants::pi;
use crate::Interval;

/// Lower end of the range on which the narrow-triangle margin is certified.
pub const T11_RANGE_LO: f64 = 1e-6;

/// The claims the engine knows how to certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// `G(α) > 1.01` on `[33/100, π/3]`.
    Theorem5,
    /// `C₁ - C₁C₂α - C₂α^{1/3} > 0` on `[1e-6, 33/100]`.
    T11,
    /// `(16+24d²+d⁴)/((1+3d²/4)(16+4d²)) - 1 ≥ 0` on `[1e-6, 2]`.
    Theorem4,
}

/// Tunable parameters of a claim; the range and comparison are fixed by the
/// claim itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClaimParams {
    pub cells: u32,
    pub threshold: f64,
    pub terms: u32,
    pub strategy: Strategy,
    pub max_depth: u32,
}

impl Default for ClaimParams {
    fn default() -> Self {
        Claim::Theorem5.default_params()
    }
}

impl Claim {
    pub const ALL: [Claim; 3] = [Claim::Theorem5, Claim::T11, Claim::Theorem4];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Claim::Theorem5 => "theorem5",
            Claim::T11 => "t11",
            Claim::Theorem4 => "theorem4",
        }
    }

    /// Identifier recorded in certificates.
    pub fn claim_id(self) -> &'static str {
        match self {
            Claim::Theorem5 => "theorem5_part2",
            Claim::T11 => "t11",
            Claim::Theorem4 => "theorem4",
        }
    }

    pub fn default_params(self) -> ClaimParams {
        let max_depth = super::DEFAULT_MAX_DEPTH;
        match self {
            Claim::Theorem5 => ClaimParams {
                cells: 1000,
                threshold: 1.01,
                terms: 10,
                strategy: Strategy::UniformMidrad,
                max_depth,
            },
            Claim::T11 => ClaimParams {
                cells: 16,
                threshold: 0.0,
                terms: 0,
                strategy: Strategy::AdaptiveBisect,
                max_depth,
            },
            Claim::Theorem4 => ClaimParams {
                cells: 64,
                threshold: 0.0,
                terms: 0,
                strategy: Strategy::AdaptiveBisect,
                max_depth,
            },
        }
    }

    pub fn config(self, p: &ClaimParams) -> Result<CertifyConfig> {
        let (range, comparison) = match self {
            Claim::Theorem5 => ((narrow_alpha_max(), (pi() / 3.0)?), Comparison::Strict),
            Claim::T11 => ((Interval::point(T11_RANGE_LO)?, narrow_alpha_max()), Comparison::Strict),
            Claim::Theorem4 => ((Interval::point(1e-6)?, Interval::int(2)), Comparison::NonStrict),
        };
        Ok(CertifyConfig {
            comparison,
            strategy: p.strategy,
            cells: p.cells,
            terms: p.terms,
            max_depth: p.max_depth,
            ..CertifyConfig::new(self.claim_id(), range, p.threshold)
        })
    }

    pub fn certify(self, p: &ClaimParams, jobs: usize) -> Result<Certificate> {
        let cfg = self.config(p)?;
        let terms = p.terms;
        match self {
            Claim::Theorem5 => certify_predicate(&cfg, move |a| g_enclosure(a, terms), jobs),
            Claim::T11 => certify_predicate(&cfg, t11_margin, jobs),
            Claim::Theorem4 => certify_predicate(&cfg, rhombus_factor_minus_one, jobs),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s || c.claim_id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown claim {s:?}")))
    }
}

/// `G(α) > threshold` on `[33/100, π/3]`, covered by `cells + 1` overlapping
/// cells `midrad(33/100 + nΔ, Δ)` with the default uniform strategy.
pub fn certify_theorem5_part2(p: ClaimParams, jobs: usize) -> Result<Certificate> {
    Claim::Theorem5.certify(&p, jobs)
}

/// Narrow-triangle margin by adaptive bisection from 16 cells.
pub fn certify_t11(max_depth: u32, jobs: usize) -> Result<Certificate> {
    Claim::T11.certify(&ClaimParams { max_depth, ..Claim::T11.default_params() }, jobs)
}

/// Margin on a cell of radius `rad` around `alpha`, used to probe where the
/// narrow estimate stops working.
pub fn t11_probe(alpha: f64, rad: f64) -> Result<Interval> {
    t11_margin(Interval::midrad(alpha, rad)?)
}

/// Rhombus lower-bound factor minus one, non-strictly, with equality at the
/// square.
pub fn certify_theorem4(cells: u32, max_depth: u32, jobs: usize) -> Result<Certificate> {
    Claim::Theorem4.certify(&ClaimParams { cells, max_depth, ..Claim::Theorem4.default_params() }, jobs)
}
