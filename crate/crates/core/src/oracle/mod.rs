//! Finite-difference estimates of torsion and first Dirichlet eigenvalue on
//! planar convex regions, reference closed forms and Richardson
//! extrapolation. Nothing here is rigorous; the oracle only cross-checks the
//! certified bounds.

pub mod mask;
pub mod series;
pub mod solve;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::shapes::ShapeSpec;
pub use mask::{BoundaryTreatment, ConvexRegion, PolygonMask};
pub use series::{disc_exact, rect_series, sector_torsion_function, RectSeries};
pub use solve::SolverConfig;

/// Result of a torsion solve, optionally with the eigenvalue.
#[derive(Debug, Clone, Serialize)]
pub struct GridSolution {
    pub shape: String,
    pub h: f64,
    pub nodes: usize,
    #[serde(rename = "T_est")]
    pub t_est: f64,
    #[serde(rename = "M_est")]
    pub m_est: f64,
    pub lambda_est: Option<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub area: f64,
    #[serde(skip)]
    pub field: Vec<f64>,
    #[serde(skip)]
    pub mask: PolygonMask,
}

impl GridSolution {
    /// `λT/|Ω|` when the eigenvalue is known.
    pub fn ratio(&self) -> Option<f64> {
        self.lambda_est.map(|l| l * self.t_est / self.area)
    }

    pub fn lambda_m(&self) -> Option<f64> {
        self.lambda_est.map(|l| l * self.m_est)
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "shape": self.shape,
            "h": self.h,
            "T_est": self.t_est,
            "M_est": self.m_est,
            "lambda_est": self.lambda_est,
            "residual": self.residual,
            "iterations": self.iterations,
        })
    }
}

const MIN_NODES: usize = 10;

fn check_size(mask: &PolygonMask) -> Result<()> {
    if mask.len() < MIN_NODES {
        return Err(Error::DomainNotSupported(format!(
            "only {} interior points at h = {}; need at least {MIN_NODES}",
            mask.len(),
            mask.h
        )));
    }
    Ok(())
}

/// Maximum of the field refined by a parabola through the largest node and
/// its axis neighbors.
fn refined_max(mask: &PolygonMask, u: &[f64]) -> f64 {
    let (k, &um) = u
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty field");
    let nb = mask.neighbors[k];
    let val = |q: usize| if nb[q] == mask::NO_NEIGHBOR { 0.0 } else { u[nb[q]] };
    let mut corr = 0.0;
    for (p, m) in [(0, 1), (2, 3)] {
        let (a, c) = (val(p), val(m));
        let curv = a - 2.0 * um + c;
        if curv < 0.0 {
            corr += -(a - c) * (a - c) / (8.0 * curv);
        }
    }
    um + corr
}

/// Solves `-Δv = 1` with zero boundary values; `T_est = h²Σv`, `M_est` the
/// refined discrete maximum.
pub fn fd_torsion(mask: PolygonMask, cfg: &SolverConfig) -> Result<GridSolution> {
    check_size(&mask)?;
    let (field, iterations, residual) = solve::torsion_field(&mask, cfg)?;
    let h2 = mask.h * mask.h;
    // smallest first
    let mut sorted = field.clone();
    sorted.sort_by(f64::total_cmp);
    let t_est = h2 * sorted.iter().sum::<f64>();
    let m_est = refined_max(&mask, &field);
    Ok(GridSolution {
        shape: mask.region.name.clone(),
        h: mask.h,
        nodes: mask.len(),
        t_est,
        m_est,
        lambda_est: None,
        residual,
        iterations,
        area: mask.region.area,
        field,
        mask,
    })
}

/// Smallest discrete Dirichlet eigenvalue by shifted inverse iteration.
/// The discrete torsion field, computed here when not supplied, is both the
/// start vector and the source of the shift `0.99/max v`.
pub fn fd_lambda(mask: &PolygonMask, torsion: Option<&[f64]>, cfg: &SolverConfig) -> Result<f64> {
    check_size(mask)?;
    let owned;
    let field = match torsion {
        Some(s) => s,
        None => {
            owned = solve::torsion_field(mask, cfg)?.0;
            &owned
        }
    };
    let vmax = field.iter().fold(0.0f64, |m, &v| m.max(v));
    let shift = if vmax > 0.0 { 0.99 / vmax } else { 0.0 };
    Ok(solve::smallest_eigenvalue(mask, field, shift, cfg)?.0)
}

/// Torsion and eigenvalue on one mask.
pub fn solve_region(region: ConvexRegion, h: f64, boundary: BoundaryTreatment, cfg: &SolverConfig) -> Result<GridSolution> {
    let mask = PolygonMask::new(region, h, boundary)?;
    let mut sol = fd_torsion(mask, cfg)?;
    sol.lambda_est = Some(fd_lambda(&sol.mask, Some(&sol.field), cfg)?);
    Ok(sol)
}

pub fn solve_shape(spec: &ShapeSpec, h: f64, boundary: BoundaryTreatment, cfg: &SolverConfig) -> Result<GridSolution> {
    solve_region(ConvexRegion::from_shape(spec)?, h, boundary, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Richardson {
    pub extrapolated: f64,
    pub error_indicator: f64,
}

/// `fine + (fine - coarse)/(2^p - 1)` with indicator `|fine - coarse|/(2^p - 1)`.
pub fn richardson(coarse: f64, fine: f64, order: u32) -> Richardson {
    let k = f64::from(2u32.pow(order)) - 1.0;
    Richardson { extrapolated: fine + (fine - coarse) / k, error_indicator: (fine - coarse).abs() / k }
}

/// Extrapolated `T`, `M`, `λ` and derived products from solves at `h` and
/// `h/2`.
#[derive(Debug, Clone, Serialize)]
pub struct Extrapolated {
    pub shape: String,
    pub h: f64,
    pub area: f64,
    pub t: Richardson,
    pub m: Richardson,
    pub lambda: Richardson,
    /// `λT/|Ω|` extrapolated from the products at both resolutions.
    pub ratio: Richardson,
    /// `λM` extrapolated from the products at both resolutions.
    pub lambda_m: Richardson,
}

pub fn extrapolate(region: &ConvexRegion, h: f64, order: u32, boundary: BoundaryTreatment, cfg: &SolverConfig) -> Result<Extrapolated> {
    let a = solve_region(region.clone(), h, boundary, cfg)?;
    let b = solve_region(region.clone(), h / 2.0, boundary, cfg)?;
    let la = a.lambda_est.expect("eigenvalue solved");
    let lb = b.lambda_est.expect("eigenvalue solved");
    Ok(Extrapolated {
        shape: region.name.clone(),
        h,
        area: region.area,
        t: richardson(a.t_est, b.t_est, order),
        m: richardson(a.m_est, b.m_est, order),
        lambda: richardson(la, lb, order),
        ratio: richardson(la * a.t_est / a.area, lb * b.t_est / b.area, order),
        lambda_m: richardson(la * a.m_est, lb * b.m_est, order),
    })
}
