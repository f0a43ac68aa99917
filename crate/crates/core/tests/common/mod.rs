//! Independent reference arithmetic for the integration tests: exact
//! rationals for the algebraic operations and a 320-bit fixed-point series
//! evaluator for the transcendental ones.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use polya::Interval;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Exact value of a decimal literal such as `-1.25e-3`.
pub fn dec(s: &str) -> BigRational {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().unwrap()),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches(['-', '+']);
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    r
}

pub fn encloses(x: &Interval, r: &BigRational) -> bool {
    rat(x.lo()) <= *r && *r <= rat(x.hi())
}

/// Whether `x` contains every real in `[lo, hi]`.
pub fn encloses_bracket(x: &Interval, lo: &BigRational, hi: &BigRational) -> bool {
    rat(x.lo()) <= *lo && *hi <= rat(x.hi())
}

pub const P: usize = 320;

/// Fixed-point number `n / 2^P`. Every operation truncates, with error at
/// most a few units of `2^-P`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fx(pub BigInt);

impl Fx {
    pub fn int(n: i64) -> Fx {
        Fx(BigInt::from(n) << P)
    }

    pub fn ratio(n: i64, d: i64) -> Fx {
        Fx((BigInt::from(n) << P) / BigInt::from(d))
    }

    pub fn from_f64(x: f64) -> Fx {
        Fx::from_rat(&rat(x))
    }

    pub fn from_rat(r: &BigRational) -> Fx {
        Fx((r.numer() << P) / r.denom())
    }

    pub fn to_rat(&self) -> BigRational {
        BigRational::new(self.0.clone(), BigInt::one() << P)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rat().to_f64().unwrap()
    }

    pub fn add(&self, o: &Fx) -> Fx {
        Fx(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Fx) -> Fx {
        Fx(&self.0 - &o.0)
    }

    pub fn mul(&self, o: &Fx) -> Fx {
        // truncate toward zero so alternating series terms reach zero
        let p = &self.0 * &o.0;
        Fx(if p.is_negative() { -((-p) >> P) } else { p >> P })
    }

    pub fn div(&self, o: &Fx) -> Fx {
        Fx((&self.0 << P) / &o.0)
    }

    pub fn divn(&self, n: i64) -> Fx {
        Fx(&self.0 / BigInt::from(n))
    }

    pub fn neg(&self) -> Fx {
        Fx(-&self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Cube root of a nonnegative value.
    pub fn cbrt(&self) -> Fx {
        Fx((&self.0 << (2 * P)).cbrt())
    }

    pub fn powi(&self, k: u32) -> Fx {
        (0..k).fold(Fx::int(1), |acc, _| acc.mul(self))
    }
}

/// Error budget claimed for the series values below, far above the
/// accumulated truncation.
pub fn series_eps() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 250)
}

pub fn sin_fx(x: &Fx) -> Fx {
    let x2 = x.mul(x);
    let mut term = x.clone();
    let mut sum = x.clone();
    let mut k = 0i64;
    loop {
        term = term.mul(&x2).divn((2 * k + 2) * (2 * k + 3)).neg();
        if term.is_zero() {
            return sum;
        }
        sum = sum.add(&term);
        k += 1;
    }
}

pub fn cos_fx(x: &Fx) -> Fx {
    let x2 = x.mul(x);
    let mut term = Fx::int(1);
    let mut sum = Fx::int(1);
    let mut k = 0i64;
    loop {
        term = term.mul(&x2).divn((2 * k + 1) * (2 * k + 2)).neg();
        if term.is_zero() {
            return sum;
        }
        sum = sum.add(&term);
        k += 1;
    }
}

/// Arctangent series for `|t| ≤ 0.5`.
fn atan_series(t: &Fx) -> Fx {
    let t2 = t.mul(t);
    let mut pow = t.clone();
    let mut sum = Fx::int(0);
    let mut k = 0i64;
    while !pow.is_zero() {
        let term = pow.divn(2 * k + 1);
        sum = if k % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        pow = pow.mul(&t2);
        k += 1;
    }
    sum
}

fn atan_half() -> &'static Fx {
    static V: OnceLock<Fx> = OnceLock::new();
    V.get_or_init(|| atan_series(&Fx::ratio(1, 2)))
}

/// π from Euler's `π/4 = atan(1/2) + atan(1/3)`.
pub fn pi_fx() -> &'static Fx {
    static V: OnceLock<Fx> = OnceLock::new();
    V.get_or_init(|| atan_half().add(&atan_series(&Fx::ratio(1, 3))).mul(&Fx::int(4)))
}

pub fn atan_fx(y: &Fx) -> Fx {
    assert!(!y.0.is_negative());
    if y.0 > Fx::int(1).0 {
        let half_pi = pi_fx().divn(2);
        return half_pi.sub(&atan_fx(&Fx::int(1).div(y)));
    }
    if y.0 > Fx::ratio(1, 4).0 {
        // atan y = atan(1/2) + atan((y - 1/2)/(1 + y/2))
        let half = Fx::ratio(1, 2);
        let t = y.sub(&half).div(&Fx::int(1).add(&y.divn(2)));
        return atan_half().add(&atan_series(&t));
    }
    atan_series(y)
}

/// `[v - eps, v + eps]` as rationals.
pub fn bracket(v: &Fx, eps: &BigRational) -> (BigRational, BigRational) {
    let r = v.to_rat();
    (&r - eps, &r + eps)
}

/// Reference bracket of `f(x)` for the named transcendental function.
pub fn trig_bracket(name: &str, x: f64) -> (BigRational, BigRational) {
    if x == 0.0 {
        let v = BigRational::from_integer(BigInt::from(i32::from(name == "cos")));
        return (v.clone(), v);
    }
    let fx = Fx::from_f64(x);
    let eps = series_eps();
    match name {
        "sin" => bracket(&sin_fx(&fx), &eps),
        "cos" => bracket(&cos_fx(&fx), &eps),
        "tan" => {
            let (s, c) = (sin_fx(&fx), cos_fx(&fx));
            // the quotient loses at most a factor 1/cos² of the inputs' error
            let inv_c = 1.0 / c.to_f64();
            let k = BigRational::from_float((4.0 * inv_c * inv_c).ceil()).unwrap();
            bracket(&s.div(&c), &(eps * k))
        }
        "atan" => bracket(&atan_fx(&fx), &eps),
        _ => panic!("no reference for {name}"),
    }
}

/// ζ(5) to about 1e-20 from 10⁴ terms and the midpoint of the integral tail
/// bracket `[1/(4(N+1)⁴), 1/(4N⁴)]`.
pub fn zeta5_fx() -> &'static Fx {
    static V: OnceLock<Fx> = OnceLock::new();
    V.get_or_init(|| {
        const N: i64 = 10_000;
        let one = BigInt::one() << P;
        let mut s = BigInt::zero();
        for n in (1..=N).rev() {
            s += &one / BigInt::from(n).pow(5);
        }
        let tail = (&one / (BigInt::from(4) * BigInt::from(N).pow(4)) + &one / (BigInt::from(4) * BigInt::from(N + 1).pow(4))) / 2;
        Fx(s + tail)
    })
}

/// `C = (9π/8)^{2/3} 2^{-1/3}`.
pub fn airy_c_fx() -> Fx {
    let base = pi_fx().mul(&Fx::ratio(9, 8));
    let cube_root = base.cbrt();
    cube_root.mul(&cube_root).div(&Fx::int(2).cbrt())
}

/// `C₁ = (9/4)^{2/3}`.
pub fn c1_fx() -> Fx {
    let r = Fx::ratio(9, 4).cbrt();
    r.mul(&r)
}

/// `C₂ = 2²·3⁴·31·ζ(5)/(5²π⁵)`.
pub fn c2_fx() -> Fx {
    zeta5_fx().mul(&Fx::int(4 * 81 * 31)).div(&pi_fx().powi(5).mul(&Fx::int(25)))
}

/// High-precision `G(α)` at a point with `N` series terms.
pub fn g_reference(alpha: f64, n: u32) -> f64 {
    let a = Fx::from_f64(alpha);
    let pi = pi_fx();
    let x = a.mul(&Fx::int(2)).div(pi);
    let mut s = Fx::int(0);
    for k in (0..=n as i64).rev() {
        let m = Fx::int(2 * k + 1);
        let den = m.mul(&m).mul(&m.add(&x)).mul(&m.add(&x)).mul(&m.sub(&x));
        s = s.add(&Fx::int(1).div(&den));
    }
    let tail = Fx::int(1).div(&Fx::int(128 * (n as i64).pow(4)));
    let tan_a = sin_fx(&a).div(&cos_fx(&a));
    let lead = tan_a.sub(&a).divn(16);
    let coeff = a.powi(4).mul(&Fx::int(8)).div(&pi.powi(5));
    let t = lead.sub(&coeff.mul(&s.add(&tail)));
    let p = pi.div(&a);
    let inner = p.add(&airy_c_fx().mul(&p.cbrt()));
    let half = a.divn(2);
    let c = cos_fx(&half);
    let l = c.mul(&c).mul(&a.div(&sin_fx(&a))).mul(&inner).mul(&inner);
    let area = sin_fx(&half).div(&c);
    Fx::int(24).div(&pi.mul(pi)).mul(&t).mul(&l).div(&area).to_f64()
}

/// High-precision `C₁ - C₁C₂α - C₂α^{1/3}` at a point.
pub fn t11_reference(alpha: f64) -> f64 {
    let a = Fx::from_f64(alpha);
    let (c1, c2) = (c1_fx(), c2_fx());
    c1.sub(&c1.mul(&c2).mul(&a)).sub(&c2.mul(&a.cbrt())).to_f64()
}

/// Exact `2d²(4 - d²)/((1 + 3d²/4)(16 + 4d²))`.
pub fn theorem4_reference(d: f64) -> BigRational {
    let d = rat(d);
    let d2 = &d * &d;
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let num = int(2) * &d2 * (int(4) - &d2);
    let den = (int(1) + int(3) * &d2 / int(4)) * (int(16) + int(4) * &d2);
    num / den
}

/// `m · 2^e` with `m` uniform in `[1, 2)` and `e` uniform in `[emin, emax]`.
pub fn rand_mag(rng: &mut ChaCha8Rng, emin: i32, emax: i32) -> f64 {
    let m: f64 = rng.gen_range(1.0..2.0);
    m * 2f64.powi(rng.gen_range(emin..=emax))
}

/// Random interval `[a, a + w]` with `a` of magnitude `2^[emin, emax]`
/// (negative with probability 1/2 when `signed`) and relative width
/// ranging from zero to order one.
pub fn rand_interval(rng: &mut ChaCha8Rng, emin: i32, emax: i32, signed: bool) -> Interval {
    let mut a = rand_mag(rng, emin, emax);
    if signed && rng.gen_bool(0.5) {
        a = -a;
    }
    let w = match rng.gen_range(0..4) {
        0 => 0.0,
        1 => a.abs() * 2f64.powi(-rng.gen_range(40..53)),
        2 => a.abs() * 2f64.powi(-rng.gen_range(1..40)),
        _ => a.abs() * rng.gen_range(0.0..4.0),
    };
    Interval::new(a, a + w).expect("ordered")
}

/// Random interval inside `[lo, hi]`.
pub fn rand_sub_interval(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Interval {
    let a: f64 = rng.gen_range(lo..=hi);
    let b: f64 = if rng.gen_bool(0.3) { a } else { rng.gen_range(lo..=hi) };
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let b = if rng.gen_bool(0.3) { (a + (b - a) * 2f64.powi(-rng.gen_range(10..50))).min(hi) } else { b };
    Interval::new(a, b).expect("ordered")
}

/// A point of `x`: an endpoint or a random interior point.
pub fn rand_point(rng: &mut ChaCha8Rng, x: &Interval) -> f64 {
    match rng.gen_range(0..4) {
        0 => x.lo(),
        1 => x.hi(),
        _ => (x.lo() + rng.gen_range(0.0..=1.0) * (x.hi() - x.lo())).clamp(x.lo(), x.hi()),
    }
}

/// Outcome of one fuzzing campaign.
#[derive(Debug, Default, Clone)]
pub struct FuzzReport {
    pub op: &'static str,
    pub samples: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

pub const FUZZ_OPS: [&str; 20] = [
    "add", "sub", "mul", "div", "recip", "sqr", "neg", "abs", "max", "min", "powi", "sqrt", "cbrt", "rational_pow",
    "sin", "cos", "tan", "atan", "midrad", "from_decimal",
];

fn int_rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow_rat(x: &BigRational, k: i32) -> BigRational {
    let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// Draws `samples` (box, point) pairs for `op` and checks that the exact
/// real result lies in the interval result. Inputs the operation rejects
/// with an error are redrawn.
pub fn fuzz_op(op: &'static str, samples: usize, seed: u64) -> FuzzReport {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = FuzzReport { op, ..Default::default() };
    let fail = |rep: &mut FuzzReport, msg: String| {
        rep.violations += 1;
        if rep.first_violation.is_none() {
            rep.first_violation = Some(msg);
        }
    };
    while rep.samples < samples {
        let ok = match op {
            "add" | "sub" | "mul" | "div" | "max" | "min" => {
                let x = rand_interval(&mut rng, -60, 60, true);
                let y = rand_interval(&mut rng, -60, 60, true);
                let r = match op {
                    "add" => x + y,
                    "sub" => x - y,
                    "mul" => x * y,
                    "div" => x / y,
                    "max" => Ok(x.max(y)),
                    _ => Ok(x.min(y)),
                };
                let Ok(r) = r else { continue };
                let (a, b) = (rand_point(&mut rng, &x), rand_point(&mut rng, &y));
                let (ra, rb) = (rat(a), rat(b));
                let exact = match op {
                    "add" => ra + rb,
                    "sub" => ra - rb,
                    "mul" => ra * rb,
                    "div" => ra / rb,
                    "max" => ra.max(rb),
                    _ => ra.min(rb),
                };
                (encloses(&r, &exact), format!("{op} {x:?} {y:?} at {a:e}, {b:e} -> {r:?}"))
            }
            "recip" | "sqr" | "neg" | "abs" => {
                let x = rand_interval(&mut rng, -60, 60, true);
                let r = match op {
                    "recip" => x.recip(),
                    "sqr" => x.sqr(),
                    "neg" => Ok(-x),
                    _ => Ok(x.abs()),
                };
                let Ok(r) = r else { continue };
                let a = rand_point(&mut rng, &x);
                let ra = rat(a);
                let exact = match op {
                    "recip" => ra.recip(),
                    "sqr" => &ra * &ra,
                    "neg" => -ra,
                    _ => ra.abs(),
                };
                (encloses(&r, &exact), format!("{op} {x:?} at {a:e} -> {r:?}"))
            }
            "powi" => {
                let k = rng.gen_range(-4..=7);
                let x = rand_interval(&mut rng, -12, 12, true);
                let Ok(r) = x.powi(k) else { continue };
                let a = rand_point(&mut rng, &x);
                if a == 0.0 && k < 0 {
                    continue;
                }
                (encloses(&r, &pow_rat(&rat(a), k)), format!("powi {x:?}^{k} at {a:e} -> {r:?}"))
            }
            "sqrt" | "cbrt" | "rational_pow" => {
                let x = rand_interval(&mut rng, -60, 60, false);
                let (p, q) = match op {
                    "sqrt" => (1, 2),
                    "cbrt" => (1, 3),
                    _ => ([-2, -1, 1, 2, 4][rng.gen_range(0..5)], rng.gen_range(2..=3u32)),
                };
                let r = match op {
                    "sqrt" => x.sqrt(),
                    "cbrt" => x.cbrt(),
                    _ => x.rational_pow(p, q),
                };
                let Ok(r) = r else { continue };
                let a = rand_point(&mut rng, &x);
                // x^(p/q) ∈ [lo, hi] iff lo^q ≤ x^p ≤ hi^q for nonnegative lo
                let xp = pow_rat(&rat(a), p);
                let lo_ok = r.lo() <= 0.0 || pow_rat(&rat(r.lo()), q as i32) <= xp;
                let hi_ok = r.hi() >= 0.0 && pow_rat(&rat(r.hi()), q as i32) >= xp;
                (lo_ok && hi_ok, format!("{op} {x:?} p/q={p}/{q} at {a:e} -> {r:?}"))
            }
            "sin" | "cos" | "tan" | "atan" => {
                let x = match op {
                    "sin" | "cos" => rand_sub_interval(&mut rng, 0.0, std::f64::consts::FRAC_PI_2),
                    "tan" => rand_sub_interval(&mut rng, 0.0, 1.55),
                    _ => {
                        let a = rand_interval(&mut rng, -30, 30, false);
                        if rng.gen_bool(0.05) {
                            Interval::new(0.0, a.hi()).unwrap()
                        } else {
                            a
                        }
                    }
                };
                let r = match op {
                    "sin" => x.sin(),
                    "cos" => x.cos(),
                    "tan" => x.tan(),
                    _ => x.atan(),
                };
                let Ok(r) = r else { continue };
                let a = rand_point(&mut rng, &x);
                let (lo, hi) = trig_bracket(op, a);
                (encloses_bracket(&r, &lo, &hi), format!("{op} {x:?} at {a:e} -> {r:?}"))
            }
            "midrad" => {
                let c = rand_interval(&mut rng, -60, 60, true).lo();
                let rad = rand_mag(&mut rng, -60, 60) * if rng.gen_bool(0.1) { 0.0 } else { 1.0 };
                let Ok(r) = Interval::midrad(c, rad) else { continue };
                let (lo, hi) = (rat(c) - rat(rad), rat(c) + rat(rad));
                (encloses_bracket(&r, &lo, &hi), format!("midrad({c:e}, {rad:e}) -> {r:?}"))
            }
            "from_decimal" => {
                let nd = rng.gen_range(1..19);
                let digits: u64 = rng.gen_range(0..10u64.pow(nd));
                let frac = rng.gen_range(0..18usize);
                let exp = rng.gen_range(-40..40);
                let mut s = digits.to_string();
                if frac > 0 && s.len() > frac {
                    s.insert(s.len() - frac, '.');
                }
                if rng.gen_bool(0.5) {
                    s.insert(0, '-');
                }
                if rng.gen_bool(0.5) {
                    s = format!("{s}e{exp}");
                }
                let Ok(r) = Interval::from_decimal(&s) else { continue };
                (encloses(&r, &dec(&s)), format!("from_decimal({s}) -> {r:?}"))
            }
            other => panic!("unknown op {other}"),
        };
        rep.samples += 1;
        if !ok.0 {
            fail(&mut rep, ok.1);
        }
    }
    rep
}

/// `ratio(n, d)` contains `n/d` exactly for random pairs.
pub fn fuzz_ratio(samples: usize, seed: u64) -> FuzzReport {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = FuzzReport { op: "ratio", ..Default::default() };
    while rep.samples < samples {
        let n: i64 = rng.gen_range(-(1i64 << 60)..(1i64 << 60)) >> rng.gen_range(0..60);
        let d: i64 = (rng.gen_range(1..(1i64 << 60)) >> rng.gen_range(0..60)).max(1);
        let Ok(r) = Interval::ratio(n, d) else { continue };
        rep.samples += 1;
        if !encloses(&r, &(int_rat(n) / int_rat(d))) {
            rep.violations += 1;
            rep.first_violation.get_or_insert(format!("ratio({n}, {d}) -> {r:?}"));
        }
    }
    rep
}
