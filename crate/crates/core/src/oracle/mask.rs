//! Convex regions and their lattice discretizations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::shapes::{shoelace_area, ShapeKind, ShapeSpec};

/// Convex region given as an intersection of half-planes `n·x ≤ c` and at
/// most one disc.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexRegion {
    pub name: String,
    pub halfplanes: Vec<[f64; 3]>,
    pub disc: Option<[f64; 3]>,
    pub area: f64,
    /// `[xmin, ymin, xmax, ymax]`
    pub bbox: [f64; 4],
    /// Lattice anchor, a symmetry point of the region.
    pub anchor: (f64, f64),
    /// Polygon vertices, when the region is a polygon.
    pub vertices: Vec<(f64, f64)>,
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Strict convexity of a counterclockwise vertex list.
pub fn is_convex_ccw(v: &[(f64, f64)]) -> bool {
    let n = v.len();
    n >= 3 && (0..n).all(|i| cross(v[i], v[(i + 1) % n], v[(i + 2) % n]) > 0.0)
}

impl ConvexRegion {
    pub fn polygon(name: &str, vertices: &[(f64, f64)]) -> Result<Self> {
        if !is_convex_ccw(vertices) {
            return Err(Error::DomainNotSupported(format!("{name}: polygon is not convex and counterclockwise")));
        }
        let n = vertices.len();
        let halfplanes = (0..n)
            .map(|i| {
                let (x0, y0) = vertices[i];
                let (x1, y1) = vertices[(i + 1) % n];
                // outward normal of a ccw edge
                let (nx, ny) = (y1 - y0, x0 - x1);
                let len = nx.hypot(ny);
                let (nx, ny) = (nx / len, ny / len);
                [nx, ny, nx * x0 + ny * y0]
            })
            .collect();
        let xs = vertices.iter().map(|p| p.0);
        let ys = vertices.iter().map(|p| p.1);
        let bbox = [
            xs.clone().fold(f64::INFINITY, f64::min),
            ys.clone().fold(f64::INFINITY, f64::min),
            xs.fold(f64::NEG_INFINITY, f64::max),
            ys.fold(f64::NEG_INFINITY, f64::max),
        ];
        let cx = vertices.iter().map(|p| p.0).sum::<f64>() / n as f64;
        let cy = vertices.iter().map(|p| p.1).sum::<f64>() / n as f64;
        Ok(ConvexRegion {
            name: name.to_string(),
            halfplanes,
            disc: None,
            area: shoelace_area(vertices),
            bbox,
            anchor: (cx, cy),
            vertices: vertices.to_vec(),
        })
    }

    pub fn disc(r: f64) -> Self {
        ConvexRegion {
            name: "disc".into(),
            halfplanes: Vec::new(),
            disc: Some([0.0, 0.0, r]),
            area: std::f64::consts::PI * r * r,
            bbox: [-r, -r, r, r],
            anchor: (0.0, 0.0),
            vertices: Vec::new(),
        }
    }

    /// Sector of radius `rho` and opening `alpha < π`, apex at the origin,
    /// bisected by the positive x axis.
    pub fn sector(rho: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < std::f64::consts::PI && rho > 0.0) {
            return Err(Error::DomainNotSupported("sector needs rho > 0 and 0 < alpha < pi".into()));
        }
        let (s, c) = (alpha / 2.0).sin_cos();
        // outward normals of the rays at angles ±α/2
        let halfplanes = vec![[-s, c, 0.0], [-s, -c, 0.0]];
        let ymax = rho * s;
        Ok(ConvexRegion {
            name: "sector".into(),
            halfplanes,
            disc: Some([0.0, 0.0, rho]),
            area: rho * rho * alpha / 2.0,
            bbox: [0.0, -ymax, rho, ymax],
            anchor: (0.0, 0.0),
            vertices: Vec::new(),
        })
    }

    pub fn rect(a: f64, b: f64) -> Result<Self> {
        let (x, y) = (a / 2.0, b / 2.0);
        Self::polygon("rect", &[(-x, -y), (x, -y), (x, y), (-x, y)])
    }

    /// Region for an oracle-solvable shape spec at its parameter midpoints.
    pub fn from_shape(spec: &ShapeSpec) -> Result<Self> {
        match &spec.kind {
            ShapeKind::Triangle(t) => Self::polygon("triangle", &t.vertices_mid()?),
            ShapeKind::Rhombus(r) => Self::polygon("rhombus", &r.vertices_mid()?),
            ShapeKind::Sector(s) => Self::sector(s.rho.mid(), s.alpha.mid()),
            ShapeKind::Rect { a, b } => Self::rect(*a, *b),
            ShapeKind::Square { s } => Self::rect(*s, *s),
            ShapeKind::Disc { r } => Ok(Self::disc(*r)),
            ShapeKind::Equilateral { s } => {
                let h = s * 3f64.sqrt() / 2.0;
                let mut reg = Self::polygon("equilateral", &[(-s / 2.0, 0.0), (s / 2.0, 0.0), (0.0, h)])?;
                reg.anchor = (0.0, h / 3.0);
                Ok(reg)
            }
            ShapeKind::Slab(_) => Err(Error::DomainNotSupported("slabs have no planar discretization".into())),
        }
    }

    /// Signed slack: positive strictly inside, in length units for the
    /// half-planes and the disc alike.
    pub fn slack(&self, x: f64, y: f64) -> f64 {
        let mut s = f64::INFINITY;
        for &[nx, ny, c] in &self.halfplanes {
            s = s.min(c - (nx * x + ny * y));
        }
        if let Some([cx, cy, r]) = self.disc {
            s = s.min(r - (x - cx).hypot(y - cy));
        }
        s
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        self.slack(x, y) > 0.0
    }

    /// Distance from an interior point to the boundary along `(dx, dy)`.
    pub fn exit_distance(&self, x: f64, y: f64, dx: f64, dy: f64) -> f64 {
        let mut t = f64::INFINITY;
        for &[nx, ny, c] in &self.halfplanes {
            let den = nx * dx + ny * dy;
            if den > 0.0 {
                t = t.min((c - (nx * x + ny * y)) / den);
            }
        }
        if let Some([cx, cy, r]) = self.disc {
            let (px, py) = (x - cx, y - cy);
            let b = px * dx + py * dy;
            let cc = px * px + py * py - r * r;
            let disc = b * b - cc;
            if disc >= 0.0 {
                t = t.min(-b + disc.sqrt());
            }
        }
        t
    }
}

/// How lattice neighbors outside the region enter the 5-point stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryTreatment {
    /// Outside neighbors are zero at full lattice distance.
    Dropped,
    /// Zero at the true boundary crossing via linear extrapolation of a
    /// ghost value, which adds `(1/θ - 1)/h²` to the diagonal and keeps the
    /// matrix symmetric.
    Ghost,
}

pub const NO_NEIGHBOR: usize = usize::MAX;

/// Lattice nodes strictly inside a region, with their stencil.
#[derive(Debug, Clone, Serialize)]
pub struct PolygonMask {
    pub region: ConvexRegion,
    pub h: f64,
    pub boundary: BoundaryTreatment,
    /// Node coordinates.
    #[serde(skip)]
    pub points: Vec<(f64, f64)>,
    /// Lattice indices `(i, j)` relative to the anchor.
    #[serde(skip)]
    pub lattice: Vec<(i64, i64)>,
    /// Neighbor indices in the order `+x, -x, +y, -y`.
    #[serde(skip)]
    pub neighbors: Vec<[usize; 4]>,
    /// Diagonal of `h²·A`.
    #[serde(skip)]
    pub diag: Vec<f64>,
}

/// Nodes whose boundary crossing is closer than this fraction of `h` are
/// treated as boundary points.
const MIN_THETA: f64 = 1e-3;

impl PolygonMask {
    pub fn new(region: ConvexRegion, h: f64, boundary: BoundaryTreatment) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::DomainNotSupported(format!("grid spacing {h}")));
        }
        let (ax, ay) = region.anchor;
        let [x0, y0, x1, y1] = region.bbox;
        let i0 = ((x0 - ax) / h).floor() as i64 - 1;
        let i1 = ((x1 - ax) / h).ceil() as i64 + 1;
        let j0 = ((y0 - ay) / h).floor() as i64 - 1;
        let j1 = ((y1 - ay) / h).ceil() as i64 + 1;
        let nx = (i1 - i0 + 1) as usize;
        let ny = (j1 - j0 + 1) as usize;
        if nx.saturating_mul(ny) > 200_000_000 {
            return Err(Error::DomainNotSupported(format!("grid spacing {h} too fine")));
        }
        let pos = |i: i64, j: i64| (ax + i as f64 * h, ay + j as f64 * h);
        let dirs = [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)];

        let mut index = vec![NO_NEIGHBOR; nx * ny];
        let mut points = Vec::new();
        let mut lattice = Vec::new();
        for j in j0..=j1 {
            for i in i0..=i1 {
                let (x, y) = pos(i, j);
                if !region.contains(x, y) {
                    continue;
                }
                let near = dirs
                    .iter()
                    .any(|&(dx, dy)| region.exit_distance(x, y, dx, dy) < MIN_THETA * h);
                if near {
                    continue;
                }
                index[(j - j0) as usize * nx + (i - i0) as usize] = points.len();
                points.push((x, y));
                lattice.push((i, j));
            }
        }
        let at = |i: i64, j: i64| -> usize {
            if i < i0 || i > i1 || j < j0 || j > j1 {
                NO_NEIGHBOR
            } else {
                index[(j - j0) as usize * nx + (i - i0) as usize]
            }
        };
        let mut neighbors = Vec::with_capacity(points.len());
        let mut diag = Vec::with_capacity(points.len());
        for (k, &(i, j)) in lattice.iter().enumerate() {
            let (x, y) = points[k];
            let nb = [at(i + 1, j), at(i - 1, j), at(i, j + 1), at(i, j - 1)];
            let mut d = 4.0;
            if boundary == BoundaryTreatment::Ghost {
                for (q, &(dx, dy)) in dirs.iter().enumerate() {
                    if nb[q] == NO_NEIGHBOR {
                        let theta = (region.exit_distance(x, y, dx, dy) / h).min(1.0);
                        d += 1.0 / theta - 1.0;
                    }
                }
            }
            neighbors.push(nb);
            diag.push(d);
        }
        Ok(PolygonMask { region, h, boundary, points, lattice, neighbors, diag })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
