//! Previously published bounds used for comparison.

use std::fmt;
use std::str::FromStr;

use super::{BoundKind, BoundResult, Quantity};
use crate::error::{Error, Result};
use crate::interval::constants::{pi, table};
use crate::Interval;

/// Which published bound to evaluate, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Published {
    /// `c_m = (m + (5(4+ln 2))^{1/2} m^{1/2} + 8)/8`, the upper constant for `λM`.
    E4Cm { m: u32 },
    /// `π²/8 + (m-1)/(8(n-2/3))` for sets with `n` times the width in extent.
    E11Slab { m: u32, n: Interval },
    /// `(π²/8)(1 + 3^{2/3}·7(w/diam)^{2/3})` in the plane.
    E12Planar { w: Interval, diam: Interval },
    /// `λ ≤ (π²/d²)(1 + 7(d/2)^{2/3})` for the base-2 triangle of height `d`.
    E33LambdaUpper { d: Interval },
}

impl Published {
    pub fn tag(&self) -> &'static str {
        match self {
            Published::E4Cm { .. } => "e4_cm",
            Published::E11Slab { .. } => "e11_slab",
            Published::E12Planar { .. } => "e12_planar",
            Published::E33LambdaUpper { .. } => "e33_lambda_upper",
        }
    }
}

impl fmt::Display for Published {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Parses `e4_cm`, `e11_slab`, `e12_planar` or `e33_lambda_upper` with
/// default parameters; callers overwrite them as needed.
impl FromStr for Published {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "e4_cm" => Published::E4Cm { m: 2 },
            "e11_slab" => Published::E11Slab { m: 2, n: Interval::ONE },
            "e12_planar" => Published::E12Planar { w: Interval::ONE, diam: Interval::int(2) },
            "e33_lambda_upper" => Published::E33LambdaUpper { d: Interval::ONE },
            other => return Err(Error::Parse(format!("unknown published bound {other:?}"))),
        })
    }
}

pub fn auxiliary_published_bounds(which: Published) -> Result<BoundResult> {
    let tag = which.tag();
    match which {
        Published::E4Cm { m } => {
            if m == 0 {
                return Err(Error::DomainNotSupported("dimension must be positive".into()));
            }
            let mi = Interval::int(m as i32);
            let root = ((table().ln2 + 4.0)? * 5.0)?.sqrt()?;
            let sum = (((root * mi.sqrt()?)? + mi)? + 8.0)?;
            let v = (sum / 8.0)?;
            Ok(BoundResult::new(tag, BoundKind::UpperBound, Quantity::LambdaM, v).param("m", mi))
        }
        Published::E11Slab { m, n } => {
            if n.lo() < 1.0 || m == 0 {
                return Err(Error::DomainNotSupported(format!("e11 needs n >= 1, got {n:?}")));
            }
            let mi = Interval::int(m as i32);
            let den = ((n - Interval::ratio(2, 3)?)? * 8.0)?;
            let v = ((pi().sqr()? / 8.0)? + ((mi - 1.0)? / den)?)?;
            Ok(BoundResult::new(tag, BoundKind::UpperBound, Quantity::LambdaM, v)
                .param("m", mi)
                .param("n", n))
        }
        Published::E12Planar { w, diam } => {
            if w.lo() <= 0.0 || w.hi() > diam.lo() {
                return Err(Error::DomainNotSupported(format!("e12 needs 0 < w <= diam, got {w:?}, {diam:?}")));
            }
            let k = (Interval::int(3).rational_pow(2, 3)? * 7.0)?;
            let corr = ((k * (w / diam)?.rational_pow(2, 3)?)? + 1.0)?;
            let v = ((pi().sqr()? / 8.0)? * corr)?;
            Ok(BoundResult::new(tag, BoundKind::UpperBound, Quantity::LambdaM, v)
                .param("w", w)
                .param("diam", diam))
        }
        Published::E33LambdaUpper { d } => {
            if d.lo() <= 0.0 {
                return Err(Error::DomainNotSupported(format!("e33 needs d > 0, got {d:?}")));
            }
            let corr = (((d / 2.0)?.rational_pow(2, 3)? * 7.0)? + 1.0)?;
            let v = ((pi().sqr()? / d.sqr()?)? * corr)?;
            Ok(BoundResult::new(tag, BoundKind::UpperBound, Quantity::Lambda, v).param("d", d))
        }
    }
}
