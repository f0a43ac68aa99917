//! Conjugate gradients and inverse iteration on a [`PolygonMask`].

use rayon::prelude::*;
use serde::Serialize;

use super::mask::{PolygonMask, NO_NEIGHBOR};
use crate::error::{Error, Result};

/// Solver knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Stop when the max-norm defect of the Poisson problem is below this
    /// (the right-hand side is 1).
    pub torsion_tol: f64,
    /// Stop inverse iteration when the Rayleigh quotient changes by less
    /// than this, relatively.
    pub lambda_tol: f64,
    pub max_cg_iterations: usize,
    pub max_power_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            torsion_tol: 1e-10,
            lambda_tol: 1e-10,
            max_cg_iterations: 200_000,
            max_power_iterations: 5_000,
        }
    }
}

const CHUNK: usize = 4096;

/// Dot product summed in fixed chunks, so the result does not depend on
/// thread scheduling.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let partial: Vec<f64> = a
        .par_chunks(CHUNK)
        .zip(b.par_chunks(CHUNK))
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>())
        .collect();
    partial.iter().sum()
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// `y = A x` with `A` the discrete negative Laplacian.
pub fn apply(mask: &PolygonMask, x: &[f64], y: &mut [f64]) {
    apply_shifted(mask, 0.0, x, y)
}

/// `y = (A - σI) x`.
pub fn apply_shifted(mask: &PolygonMask, shift: f64, x: &[f64], y: &mut [f64]) {
    let inv_h2 = 1.0 / (mask.h * mask.h);
    let d_shift = shift * mask.h * mask.h;
    y.par_iter_mut().enumerate().for_each(|(k, out)| {
        let mut s = (mask.diag[k] - d_shift) * x[k];
        for &n in &mask.neighbors[k] {
            if n != NO_NEIGHBOR {
                s -= x[n];
            }
        }
        *out = s * inv_h2;
    });
}

/// Jacobi-preconditioned conjugate gradients for `A u = f`, starting from
/// `u`. Returns the iteration count and the final max-norm defect.
pub fn cg(mask: &PolygonMask, f: &[f64], u: &mut [f64], tol: f64, max_iter: usize) -> Result<(usize, f64)> {
    cg_shifted(mask, 0.0, f, u, tol, max_iter)
}

/// [`cg`] for `(A - σI) u = f`; `σ` must lie below the smallest eigenvalue.
pub fn cg_shifted(
    mask: &PolygonMask,
    shift: f64,
    f: &[f64],
    u: &mut [f64],
    tol: f64,
    max_iter: usize,
) -> Result<(usize, f64)> {
    let n = f.len();
    let inv_h2 = 1.0 / (mask.h * mask.h);
    let pinv: Vec<f64> = mask.diag.iter().map(|d| 1.0 / (d * inv_h2 - shift)).collect();
    let mut r = vec![0.0; n];
    apply_shifted(mask, shift, u, &mut r);
    r.par_iter_mut().zip(f).for_each(|(ri, fi)| *ri = fi - *ri);
    let mut z: Vec<f64> = r.iter().zip(&pinv).map(|(a, b)| a * b).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    let mut defect = max_abs(&r);
    for it in 0..max_iter {
        if defect <= tol {
            return Ok((it, defect));
        }
        apply_shifted(mask, shift, &p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return Err(Error::NonConvergence { iterations: it, residual: defect });
        }
        let alpha = rz / pap;
        u.par_iter_mut().zip(&p).for_each(|(ui, pi)| *ui += alpha * pi);
        r.par_iter_mut().zip(&ap).for_each(|(ri, ai)| *ri -= alpha * ai);
        // recompute the true defect now and then to avoid drift
        if it % 500 == 499 {
            apply_shifted(mask, shift, u, &mut ap);
            r.par_iter_mut().zip(f).zip(&ap).for_each(|((ri, fi), ai)| *ri = fi - ai);
        }
        defect = max_abs(&r);
        z.par_iter_mut().zip(&r).zip(&pinv).for_each(|((zi, ri), di)| *zi = ri * di);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        p.par_iter_mut().zip(&z).for_each(|(pi, zi)| *pi = zi + beta * *pi);
    }
    if defect <= tol {
        Ok((max_iter, defect))
    } else {
        Err(Error::NonConvergence { iterations: max_iter, residual: defect })
    }
}

/// Discrete torsion function, with the CG iteration count and defect.
pub fn torsion_field(mask: &PolygonMask, cfg: &SolverConfig) -> Result<(Vec<f64>, usize, f64)> {
    let f = vec![1.0; mask.len()];
    let mut u = vec![0.0; mask.len()];
    let (it, defect) = cg(mask, &f, &mut u, cfg.torsion_tol, cfg.max_cg_iterations)?;
    Ok((u, it, defect))
}

/// Smallest eigenvalue by inverse iteration from `start`, shifted by
/// `shift` below the spectrum; returns the eigenvalue, the normalized
/// eigenvector and the outer iteration count.
///
/// `A` is an M-matrix, so `A⁻¹ ≥ 0` entrywise and its largest eigenvalue is
/// at most `‖A⁻¹1‖_∞`: the reciprocal of the discrete torsion maximum is a
/// safe shift.
pub fn smallest_eigenvalue(
    mask: &PolygonMask,
    start: &[f64],
    shift: f64,
    cfg: &SolverConfig,
) -> Result<(f64, Vec<f64>, usize)> {
    let n = mask.len();
    let mut x = start.to_vec();
    let norm = dot(&x, &x).sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
    let mut ax = vec![0.0; n];
    apply(mask, &x, &mut ax);
    let mut rq = dot(&x, &ax);
    let mut y = x.clone();
    for it in 1..=cfg.max_power_iterations {
        // warm start with the previous iterate scaled by 1/λ
        y.iter_mut().zip(&x).for_each(|(yi, xi)| *yi = xi / (rq - shift));
        // the Rayleigh quotient is quadratic in the inner solve error
        let tol = 1e-10 * max_abs(&x);
        cg_shifted(mask, shift, &x, &mut y, tol, cfg.max_cg_iterations)?;
        let norm = dot(&y, &y).sqrt();
        x.iter_mut().zip(&y).for_each(|(xi, yi)| *xi = yi / norm);
        apply(mask, &x, &mut ax);
        let next = dot(&x, &ax);
        if (next - rq).abs() <= cfg.lambda_tol * next {
            return Ok((next, x, it));
        }
        rq = next;
    }
    Err(Error::NonConvergence { iterations: cfg.max_power_iterations, residual: rq })
}
