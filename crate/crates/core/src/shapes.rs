//! Shape families parameterized by angles, and the conversions between the
//! normalizations used by the bounds: base-2 and height-1 isosceles
//! triangles, rhombi with major diagonal 2, circular sectors and abstract
//! convex slabs.
//!
//! Lengths are always derived from the angle enclosures so that a single
//! rounding discipline governs every conversion.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::constants::{half_pi, pi};
use crate::Interval;

/// Which side of an isosceles triangle is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Normalization {
    /// Base of length 2; the height is `d = 1/tan(α/2)` and the area is `d`.
    Base2,
    /// Height 1; the half-base is `tan(α/2)` and so is the area.
    Height1,
}

/// Isosceles triangle with apex angle `α` and base angles `β = (π - α)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsoscelesTriangle {
    pub alpha: Interval,
    /// Base angle enclosure, kept from construction rather than recomputed
    /// from `alpha`.
    pub base_angle: Interval,
    pub normalization: Normalization,
}

impl IsoscelesTriangle {
    pub fn from_alpha(alpha: Interval, normalization: Normalization) -> Result<Self> {
        if alpha.lo() <= 0.0 || alpha.hi() >= pi().lo() {
            return Err(Error::DomainNotSupported(format!("apex angle {alpha:?} outside (0, pi)")));
        }
        let base_angle = ((pi() - alpha)? / 2.0)?;
        Ok(IsoscelesTriangle { alpha, base_angle, normalization })
    }

    /// Apex enclosure `π - 2β`.
    pub fn from_beta(beta: Interval, normalization: Normalization) -> Result<Self> {
        if beta.lo() <= 0.0 || beta.hi() >= half_pi().lo() {
            return Err(Error::DomainNotSupported(format!("base angle {beta:?} outside (0, pi/2)")));
        }
        let alpha = (pi() - beta * 2.0)?;
        // β < π/2 strictly, so α > 0 and the clamp only drops rounding slack.
        let alpha = Interval::new(alpha.lo().max(f64::MIN_POSITIVE), alpha.hi().min(pi().hi()))?;
        Ok(IsoscelesTriangle { alpha, base_angle: beta, normalization })
    }

    pub fn beta(&self) -> Result<Interval> {
        Ok(self.base_angle)
    }

    pub fn tan_half_alpha(&self) -> Result<Interval> {
        (self.alpha / 2.0)?.tan()
    }

    /// Height of the base-2 normalization, `d = tan β = 1/tan(α/2)`.
    pub fn d(&self) -> Result<Interval> {
        self.tan_half_alpha()?.recip()
    }

    pub fn height(&self) -> Result<Interval> {
        match self.normalization {
            Normalization::Base2 => self.d(),
            Normalization::Height1 => Ok(Interval::ONE),
        }
    }

    pub fn half_base(&self) -> Result<Interval> {
        match self.normalization {
            Normalization::Base2 => Ok(Interval::ONE),
            Normalization::Height1 => self.tan_half_alpha(),
        }
    }

    pub fn area(&self) -> Result<Interval> {
        self.half_base()? * self.height()?
    }

    /// Vertices at the parameter midpoints: base on the x axis, apex on the
    /// positive y axis, counterclockwise.
    pub fn vertices_mid(&self) -> Result<[(f64, f64); 3]> {
        let b = self.half_base()?.mid();
        let h = self.height()?.mid();
        Ok([(-b, 0.0), (b, 0.0), (0.0, h)])
    }

    /// Sector with the same apex angle and the same area, `ρ² = 2|△|/α`;
    /// for the base-2 triangle this is `ρ² = 2/(α tan(α/2))`.
    pub fn equal_area_sector(&self) -> Result<Sector> {
        let rho2 = ((self.area()? * 2.0)? / self.alpha)?;
        Sector::new(rho2.sqrt()?, self.alpha)
    }
}

/// `triangle_from_beta` in functional form.
pub fn triangle_from_beta(beta: Interval, normalization: Normalization) -> Result<IsoscelesTriangle> {
    IsoscelesTriangle::from_beta(beta, normalization)
}

/// Height `d` of the base-2 triangle with the same angles.
pub fn triangle_d(t: &IsoscelesTriangle) -> Result<Interval> {
    t.d()
}

/// Rhombus with acute angle `β`, major diagonal 2 and minor diagonal
/// `d = 2 tan(β/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rhombus {
    pub beta: Interval,
}

impl Rhombus {
    /// `β ∈ (0, π/2]`; `β = π/2` is the square.
    pub fn new(beta: Interval) -> Result<Self> {
        if beta.lo() <= 0.0 || beta.hi() > half_pi().hi() {
            return Err(Error::DomainNotSupported(format!("rhombus angle {beta:?} outside (0, pi/2]")));
        }
        Ok(Rhombus { beta })
    }

    /// Rhombus with minor diagonal `d ∈ (0, 2]`: `β = 2 arctan(d/2)`.
    pub fn from_d(d: Interval) -> Result<Self> {
        if d.lo() <= 0.0 || d.hi() > 2.0 {
            return Err(Error::DomainNotSupported(format!("rhombus diagonal {d:?} outside (0, 2]")));
        }
        let beta = ((d / 2.0)?.atan()? * 2.0)?;
        let beta = Interval::new(beta.lo(), beta.hi().min(half_pi().hi()))?;
        Rhombus::new(beta)
    }

    pub fn d(&self) -> Result<Interval> {
        let d = ((self.beta / 2.0)?.tan()? * 2.0)?;
        // β ≤ π/2 bounds d by 2.
        Interval::new(d.lo().min(2.0), d.hi().min(2.0))
    }

    pub fn area(&self) -> Result<Interval> {
        self.d()
    }

    /// `(±1, 0)`, `(0, ±d/2)` at the parameter midpoint, counterclockwise.
    pub fn vertices_mid(&self) -> Result<[(f64, f64); 4]> {
        let h = self.d()?.mid() / 2.0;
        Ok([(1.0, 0.0), (0.0, h), (-1.0, 0.0), (0.0, -h)])
    }
}

pub fn rhombus_d(r: &Rhombus) -> Result<Interval> {
    r.d()
}

/// Circular sector `{(r, φ) : 0 < r < ρ, |φ| < α/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sector {
    pub rho: Interval,
    pub alpha: Interval,
}

impl Sector {
    pub fn new(rho: Interval, alpha: Interval) -> Result<Self> {
        if rho.lo() <= 0.0 {
            return Err(Error::DomainNotSupported(format!("sector radius {rho:?} not positive")));
        }
        if alpha.lo() <= 0.0 || alpha.hi() >= pi().lo() {
            return Err(Error::DomainNotSupported(format!("sector angle {alpha:?} outside (0, pi)")));
        }
        Ok(Sector { rho, alpha })
    }

    pub fn area(&self) -> Result<Interval> {
        (self.rho.sqr()? * self.alpha)? / 2.0
    }
}

/// Convex set in `R^m` described by its width `w` and the inradius `ρ` of
/// its central section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexSlabSpec {
    pub m: u32,
    pub w: Interval,
    pub rho_section: Interval,
}

impl ConvexSlabSpec {
    pub fn new(m: u32, w: Interval, rho_section: Interval) -> Result<Self> {
        if m < 2 {
            return Err(Error::DomainNotSupported(format!("dimension {m} < 2")));
        }
        if w.lo() <= 0.0 || rho_section.lo() <= 0.0 {
            return Err(Error::DomainNotSupported("width and section inradius must be positive".into()));
        }
        Ok(ConvexSlabSpec { m, w, rho_section })
    }
}

/// Shoelace area of a simple polygon.
pub fn shoelace_area(vertices: &[(f64, f64)]) -> f64 {
    let n = vertices.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (x0, y0) = vertices[i];
            let (x1, y1) = vertices[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum();
    0.5 * twice.abs()
}

/// A parsed `kind:key=value,...` shape description.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSpec {
    pub kind: ShapeKind,
    /// Parameters as given, in order, for echoing into manifests.
    pub params: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeKind {
    Triangle(IsoscelesTriangle),
    Rhombus(Rhombus),
    Sector(Sector),
    Slab(ConvexSlabSpec),
    /// `rect:a=..,b=..` side lengths (oracle only).
    Rect { a: f64, b: f64 },
    /// `disc:r=..` (oracle only).
    Disc { r: f64 },
    /// `square:s=..` (oracle only).
    Square { s: f64 },
    /// `equilateral:s=..` (oracle only).
    Equilateral { s: f64 },
}

impl ShapeSpec {
    pub fn name(&self) -> &'static str {
        match self.kind {
            ShapeKind::Triangle(_) => "triangle",
            ShapeKind::Rhombus(_) => "rhombus",
            ShapeKind::Sector(_) => "sector",
            ShapeKind::Slab(_) => "slab",
            ShapeKind::Rect { .. } => "rect",
            ShapeKind::Disc { .. } => "disc",
            ShapeKind::Square { .. } => "square",
            ShapeKind::Equilateral { .. } => "equilateral",
        }
    }

    fn get<'a>(params: &'a [(String, String)], key: &str) -> Result<&'a str> {
        params
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::Parse(format!("missing parameter {key:?}")))
    }

    fn interval(params: &[(String, String)], key: &str) -> Result<Interval> {
        Interval::from_decimal(Self::get(params, key)?)
    }

    fn float(params: &[(String, String)], key: &str) -> Result<f64> {
        let v = Self::get(params, key)?;
        let x: f64 = v.parse().map_err(|_| Error::Parse(format!("{key}={v} is not a number")))?;
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::Parse(format!("{key}={v} must be positive")));
        }
        Ok(x)
    }
}

impl FromStr for ShapeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("shape spec {s:?} lacks ':'")))?;
        let mut params = Vec::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("parameter {part:?} lacks '='")))?;
            params.push((k.trim().to_string(), v.trim().to_string()));
        }
        let has = |k: &str| params.iter().any(|(key, _)| key == k);
        let kind = match kind.trim() {
            "triangle" => {
                let t = if has("alpha") {
                    IsoscelesTriangle::from_alpha(Self::interval(&params, "alpha")?, Normalization::Base2)?
                } else {
                    triangle_from_beta(Self::interval(&params, "beta")?, Normalization::Base2)?
                };
                ShapeKind::Triangle(t)
            }
            "rhombus" => {
                let r = if has("d") {
                    Rhombus::from_d(Self::interval(&params, "d")?)?
                } else {
                    Rhombus::new(Self::interval(&params, "beta")?)?
                };
                ShapeKind::Rhombus(r)
            }
            "sector" => ShapeKind::Sector(Sector::new(
                Self::interval(&params, "rho")?,
                Self::interval(&params, "alpha")?,
            )?),
            "slab" => {
                let m: u32 = Self::get(&params, "m")?
                    .parse()
                    .map_err(|_| Error::Parse("slab m must be an integer".into()))?;
                ShapeKind::Slab(ConvexSlabSpec::new(
                    m,
                    Self::interval(&params, "w")?,
                    Self::interval(&params, "rho")?,
                )?)
            }
            "rect" => ShapeKind::Rect { a: Self::float(&params, "a")?, b: Self::float(&params, "b")? },
            "disc" => ShapeKind::Disc { r: Self::float(&params, "r")? },
            "square" => ShapeKind::Square { s: Self::float(&params, "s")? },
            "equilateral" => ShapeKind::Equilateral { s: Self::float(&params, "s")? },
            other => return Err(Error::Parse(format!("unknown shape kind {other:?}"))),
        };
        Ok(ShapeSpec { kind, params })
    }
}

impl fmt::Display for ShapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}:{}", self.name(), params.join(","))
    }
}
