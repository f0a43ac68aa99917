//! Closed forms and series for reference shapes.

use std::f64::consts::PI;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectSeries {
    pub lambda_exact: f64,
    pub t: f64,
    pub m: f64,
    /// Upper bound on the truncation error of `t`.
    pub t_tail: f64,
    /// Upper bound on the truncation error of `m`.
    pub m_tail: f64,
}

/// Torsional rigidity, maximal torsion and first eigenvalue of the `a × b`
/// rectangle from the single cosine series in the short direction, summed
/// over the first `terms` odd indices.
///
/// With `b` the short side and `q = πa/(2b)`:
/// `T = ab³/12 - (16b⁴/π⁵) Σ_odd tanh(nq)/n⁵`, truncation error below
/// `Σ_{n > 2N-1} n⁻⁵ ≤ 1/(4(2N)⁴)` times `16b⁴/π⁵`;
/// `M = b²/8 - (4b²/π³) Σ_odd (-1)^{(n-1)/2} / (n³ cosh(nq))`, alternating
/// with terms below `2e^{-nq}/n³`, so the tail is bounded by the first
/// omitted term.
pub fn rect_series(a: f64, b: f64, terms: usize) -> RectSeries {
    let (a, b) = if a >= b { (a, b) } else { (b, a) };
    let q = PI * a / (2.0 * b);
    let terms = terms.max(1);
    let mut st = 0.0;
    let mut sm = 0.0;
    // smallest first for the torsion sum
    for k in (0..terms).rev() {
        let n = (2 * k + 1) as f64;
        st += (n * q).tanh() / n.powi(5);
    }
    for k in 0..terms {
        let n = (2 * k + 1) as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let c = (n * q).cosh();
        if c.is_finite() {
            sm += sign / (n.powi(3) * c);
        }
    }
    let b4 = b.powi(4);
    let t = a * b.powi(3) / 12.0 - 16.0 * b4 / PI.powi(5) * st;
    let m = b * b / 8.0 - 4.0 * b * b / PI.powi(3) * sm;
    let next = (2 * terms + 1) as f64;
    let t_tail = 16.0 * b4 / PI.powi(5) / (4.0 * (2.0 * terms as f64).powi(4));
    let m_tail = 4.0 * b * b / PI.powi(3) * 2.0 * (-next * q).exp() / next.powi(3);
    RectSeries { lambda_exact: PI * PI * (1.0 / (a * a) + 1.0 / (b * b)), t, m, t_tail, m_tail }
}

/// Exact data for the disc of radius `r`: `v = (r² - |x|²)/4`.
pub fn disc_exact(r: f64) -> (f64, f64) {
    (PI * r.powi(4) / 8.0, r * r / 4.0)
}

/// Torsion function of the sector `{0 < r < ρ, |φ| < α/2}`, `α < π/2`:
/// the infinite-sector solution corrected by the series in `(r/ρ)^{nπ/α}`.
pub fn sector_torsion_function(r: f64, phi: f64, rho: f64, alpha: f64, terms: usize) -> f64 {
    let x = 2.0 * alpha / PI;
    let mut s = 0.0;
    for k in 0..terms {
        let n = (2 * k + 1) as f64;
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        let radial = (r / rho).powf(n * PI / alpha);
        s += sign * radial * (n * PI * phi / alpha).cos() / (n * (n + x) * (n - x));
    }
    r * r / 4.0 * ((2.0 * phi).cos() / alpha.cos() - 1.0) + 4.0 * rho * rho * alpha * alpha / PI.powi(3) * s
}
