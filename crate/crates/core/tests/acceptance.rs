//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{encloses_bracket, fuzz_op, fuzz_ratio, trig_bracket, FUZZ_OPS};
use polya::bounds::{auxiliary_published_bounds, theorem1_upper, Published};
use polya::certifier::{covers, t11_probe, Claim};
use polya::cli::sweep_row;
use polya::constants::{bessel_zero, pi};
use polya::oracle::{disc_exact, extrapolate, rect_series, solve_region, solve_shape, BoundaryTreatment, ConvexRegion, SolverConfig};
use polya::shapes::ConvexSlabSpec;
use polya::Interval;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theorem5() -> Outcome {
    let t0 = Instant::now();
    let cert = Claim::Theorem5.certify(&Claim::Theorem5.default_params(), 1).map_err(|e| e.to_string())?;
    let secs = t0.elapsed().as_secs_f64();
    let third = (pi() / 3.0).unwrap();
    ensure(cert.cells.len() == 1001, || format!("{} cells", cert.cells.len()))?;
    ensure(cert.passed && cert.cells.iter().all(|c| c.pass), || format!("{} failing cells", cert.failures().count()))?;
    ensure(cert.range[0] <= 0.33 && cert.range[1] >= third.hi() && covers(&cert.cells, cert.range), || "range not covered".into())?;
    ensure(cert.terms == 10 && cert.threshold == 1.01, || "wrong parameters".into())?;
    ensure(secs <= 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("1001/1001 cells pass, min G lower endpoint {:.6}, {secs:.2}s", cert.min_value().unwrap()))
}

fn t11() -> Outcome {
    let cert = Claim::T11.certify(&Claim::T11.default_params(), 1).map_err(|e| e.to_string())?;
    ensure(cert.passed, || format!("{} failing cells", cert.failures().count()))?;
    ensure(cert.range[0] <= 1e-6 && cert.range[1] >= 0.33, || format!("range {:?}", cert.range))?;
    let probe = t11_probe(0.35, 0.005).map_err(|e| e.to_string())?;
    ensure(probe.lo() <= 0.0, || format!("margin at 0.35 certified positive: {probe:?}"))?;
    Ok(format!("{} leaves pass on [1e-6, 33/100]; margin at 0.35 +- 0.005 is [{:.4}, {:.4}]", cert.cells.len(), probe.lo(), probe.hi()))
}

fn theorem4() -> Outcome {
    let cert = Claim::Theorem4.certify(&Claim::Theorem4.default_params(), 1).map_err(|e| e.to_string())?;
    ensure(cert.passed, || format!("{} failing cells", cert.failures().count()))?;
    let last = cert.cells.last().unwrap();
    let v = last.value.unwrap();
    ensure(last.cell.hi() >= 2.0 && v.contains(0.0), || format!("last cell {:?} value {v:?}", last.cell))?;
    Ok(format!("{} cells pass on [1e-6, 2]; value at the d = 2 cell [{:.3e}, {:.3e}] contains 0", cert.cells.len(), v.lo(), v.hi()))
}

fn fuzzing() -> Outcome {
    const N: usize = 100_000;
    let mut total = 0;
    for (i, op) in FUZZ_OPS.iter().enumerate() {
        let rep = fuzz_op(op, N, 0xacce + i as u64);
        ensure(rep.violations == 0, || format!("{op}: {} violations, first {:?}", rep.violations, rep.first_violation))?;
        total += rep.samples;
    }
    let rep = fuzz_ratio(N, 0xacce);
    ensure(rep.violations == 0, || format!("ratio: {:?}", rep.first_violation))?;
    total += rep.samples;
    let mut points = 0;
    for name in ["sin", "cos", "tan", "atan"] {
        for k in 0..250 {
            let t = (k as f64 + 0.5) / 250.0;
            let x = match name {
                "sin" | "cos" => t * PI / 2.0,
                "tan" => t * 1.55,
                _ => 10f64.powf(-6.0 + 12.0 * t),
            };
            let xi = Interval::point(x).unwrap();
            let r = match name {
                "sin" => xi.sin(),
                "cos" => xi.cos(),
                "tan" => xi.tan(),
                _ => xi.atan(),
            }
            .map_err(|e| e.to_string())?;
            let (lo, hi) = trig_bracket(name, x);
            ensure(encloses_bracket(&r, &lo, &hi), || format!("{name}({x}) = {r:?}"))?;
            points += 1;
        }
    }
    Ok(format!("{} ops x {N} samples + ratio, {total} total, 0 violations; {points} trig oracle points contained", FUZZ_OPS.len()))
}

fn sandwich() -> Outcome {
    let cfg = SolverConfig::default();
    let top = (pi() / 3.0).unwrap().lo();
    let mut worst: f64 = 0.0;
    let mut n = 0;
    for kind in ["triangle", "rhombus"] {
        for k in 0..20 {
            let beta = 0.05 + (top - 0.05) * k as f64 / 19.0;
            let beta = if k == 19 { top } else { beta };
            let spec = format!("{kind}:beta={beta:?}").parse().map_err(|e: polya::Error| e.to_string())?;
            let row = sweep_row(&spec, beta, None, 32.0, 2, BoundaryTreatment::Ghost, &cfg).map_err(|e| e.to_string())?;
            let (Some(lo), Some(hi)) = (row.lower_cert_lo, row.upper_cert_hi) else {
                return Err(format!("{kind} beta={beta}: missing certified bound"));
            };
            ensure(row.inside == Some(true), || format!("{kind} beta={beta}: ratio {} outside [{lo}, {hi}]", row.ratio))?;
            ensure(row.ratio < 1.0, || format!("{kind} beta={beta}: ratio {}", row.ratio))?;
            // how far into the tolerance band the oracle went
            let tol = (0.01 * row.ratio).max(5.0 * row.ratio_indicator);
            worst = worst.max((lo - row.ratio).max(row.ratio - hi) / tol);
            n += 1;
        }
    }
    Ok(format!("{n} shapes inside their sandwich; worst excursion {:.2} of tol", worst.max(0.0)))
}

fn anchors() -> Outcome {
    let cfg = SolverConfig::default();
    let r = 1.0;
    let disc = solve_shape(&"disc:r=1".parse().unwrap(), r / 128.0, BoundaryTreatment::Ghost, &cfg).map_err(|e| e.to_string())?;
    let (_, m) = disc_exact(r);
    let j2 = bessel_zero(0).unwrap().sqr().unwrap();
    let m_err = (disc.m_est / m - 1.0).abs();
    let l = disc.lambda_est.unwrap();
    let l_err = (l / j2.mid() - 1.0).abs();
    ensure(m_err < 0.01, || format!("disc M rel error {m_err:.2e}"))?;
    ensure(l_err < 0.02, || format!("disc lambda rel error {l_err:.2e}"))?;
    let sq = solve_shape(&"square:s=1".parse().unwrap(), 1.0 / 64.0, BoundaryTreatment::Ghost, &cfg).map_err(|e| e.to_string())?;
    let s_err = (sq.lambda_est.unwrap() / (2.0 * PI * PI) - 1.0).abs();
    ensure(s_err < 0.01, || format!("square lambda rel error {s_err:.2e}"))?;
    let mut ratios = vec![disc.ratio().unwrap(), sq.ratio().unwrap()];
    for s in ["equilateral:s=1", "rect:a=6,b=1", "triangle:beta=0.3", "rhombus:beta=0.4", "sector:rho=1,alpha=1.2", "triangle:alpha=0.2"] {
        let region = ConvexRegion::from_shape(&s.parse().unwrap()).map_err(|e| e.to_string())?;
        let [x0, y0, x1, y1] = region.bbox;
        let h = (x1 - x0).min(y1 - y0) / 48.0;
        let sol = solve_region(region, h, BoundaryTreatment::Ghost, &cfg).map_err(|e| e.to_string())?;
        ratios.push(sol.ratio().unwrap());
    }
    let max = ratios.iter().copied().fold(0.0, f64::max);
    ensure(max < 1.0, || format!("ratio {max} >= 1"))?;
    Ok(format!("disc M {m_err:.1e}, lambda {l_err:.1e}; square lambda {s_err:.1e} (relative); {} shapes, max ratio {max:.4}", ratios.len()))
}

fn slab_limits() -> Outcome {
    for n in [1, 2, 4, 8] {
        let s = rect_series(2.0 * n as f64, 1.0, 200);
        let b = auxiliary_published_bounds(Published::E11Slab { m: 2, n: Interval::int(n) }).map_err(|e| e.to_string())?;
        let lm = s.lambda_exact * (s.m + s.m_tail);
        ensure(lm <= b.value.lo(), || format!("n = {n}: {lm} > {:?}", b.value))?;
    }
    let s = rect_series(1000.0, 1.0, 200);
    let ratio = s.lambda_exact * s.t / 1000.0;
    let rel = ratio / (PI * PI / 12.0) - 1.0;
    ensure(rel.abs() < 1e-3, || format!("aspect 1000 ratio off by {rel:.2e}"))?;
    let mut aspects = 0;
    for k in 0..=100 {
        let aspect = 2.0 * 500f64.powf(k as f64 / 100.0);
        let s = rect_series(aspect, 1.0, 200);
        let lm = s.lambda_exact * (s.m + s.m_tail);
        let slab = ConvexSlabSpec::new(2, Interval::ONE, Interval::point(aspect / 2.0).unwrap()).map_err(|e| e.to_string())?;
        let up = theorem1_upper(&slab).map_err(|e| e.to_string())?;
        ensure(lm <= up.value.lo(), || format!("aspect {aspect}: {lm} > {:?}", up.value))?;
        aspects += 1;
    }
    Ok(format!("e11 holds for n = 1, 2, 4, 8; aspect-1000 ratio rel error {rel:.2e}; slab bound dominates at {aspects} aspects in [2, 1000]"))
}

fn e7_ordering() -> Outcome {
    let cfg = SolverConfig::default();
    let n = 64.0;
    let r = (1.0 / PI).sqrt();
    let e = (4.0 / 3f64.sqrt()).sqrt();
    let equilateral = ConvexRegion::from_shape(&format!("equilateral:s={e}").parse().unwrap()).map_err(|e| e.to_string())?;
    let shapes = [
        ("disc", ConvexRegion::disc(r), 2.0 * r / n),
        ("square", ConvexRegion::rect(1.0, 1.0).unwrap(), 1.0 / n),
        ("equilateral", equilateral, e / n),
    ];
    let mut rows = Vec::new();
    for (name, region, h) in shapes {
        let x = extrapolate(&region, h, 2, BoundaryTreatment::Ghost, &cfg).map_err(|e| e.to_string())?;
        rows.push((name, x.lambda_m));
    }
    let mut detail = Vec::new();
    for w in rows.windows(2) {
        let gap = w[1].1.extrapolated - w[0].1.extrapolated;
        let noise = 3.0 * (w[0].1.error_indicator + w[1].1.error_indicator);
        ensure(gap > noise, || format!("{} < {}: gap {gap:.2e} vs {noise:.2e}", w[0].0, w[1].0))?;
        detail.push(format!("{} < {} by {gap:.2e} (3x indicators {noise:.2e})", w[0].0, w[1].0));
    }
    Ok(detail.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("theorem5 certificate", theorem5),
        ("t11 certificate", t11),
        ("theorem4 certificate", theorem4),
        ("containment fuzzing", fuzzing),
        ("sandwich sweep", sandwich),
        ("classical anchors", anchors),
        ("slab and thin limits", slab_limits),
        ("e7 ordering", e7_ordering),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS [{}] {name}: {d} ({secs:.1}s)", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL [{}] {name}: {d} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
