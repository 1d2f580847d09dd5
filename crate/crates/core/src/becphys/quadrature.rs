//! Adaptive Gauss–Kronrod quadrature, semi-infinite extension and principal
//! values.
//!
//! Subdivision is global-adaptive (always split the interval with the largest
//! error estimate) and the final sum is taken in left-to-right interval order,
//! so results are bit-reproducible.

use crate::error::{Error, Result};
use crate::scalar::Real;

// 15-point Kronrod nodes (non-negative half) and weights; every other node
// (odd index) is a 7-point Gauss node.
const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Quad<R: Real> {
    pub value: R,
    pub abs_error: R,
    pub evaluations: usize,
}

#[derive(Clone, Copy)]
struct Segment<R: Real> {
    a: R,
    b: R,
    value: R,
    error: R,
}

fn gk15<R: Real, F: Fn(R) -> R>(f: &F, a: R, b: R) -> Segment<R> {
    let half = R::lit(0.5);
    let center = half * (a + b);
    let h = half * (b - a);
    let fc = f(center);
    let mut kron = fc * R::lit(WK[7]);
    let mut gauss = fc * R::lit(WG[3]);
    for j in 0..7 {
        let dx = h * R::lit(XK[j]);
        let pair = f(center - dx) + f(center + dx);
        kron = kron + pair * R::lit(WK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * R::lit(WG[j / 2]);
        }
    }
    Segment {
        a,
        b,
        value: kron * h,
        error: ((kron - gauss) * h).abs(),
    }
}

/// Adaptive integral of `f` over `[a, b]`.
pub fn integrate<R: Real, F: Fn(R) -> R>(f: F, a: R, b: R, cfg: &QuadConfig) -> Result<Quad<R>> {
    if a == b {
        return Ok(Quad {
            value: R::zero(),
            abs_error: R::zero(),
            evaluations: 0,
        });
    }
    let mut segs = vec![gk15(&f, a, b)];
    let mut evals = 15;
    loop {
        let total: R = segs.iter().map(|s| s.value).sum();
        let err: R = segs.iter().map(|s| s.error).sum();
        let target = R::lit(cfg.abs_tol).max(R::lit(cfg.rel_tol) * total.abs());
        if !total.is_finite() {
            return Err(Error::Quadrature {
                estimate: total.as_f64(),
                achieved: err.as_f64(),
                requested: target.as_f64(),
            });
        }
        if err <= target || segs.len() >= cfg.max_intervals {
            if err > target && err > R::lit(1e3) * target {
                return Err(Error::Quadrature {
                    estimate: total.as_f64(),
                    achieved: err.as_f64(),
                    requested: target.as_f64(),
                });
            }
            segs.sort_by(|x, y| x.a.partial_cmp(&y.a).expect("finite endpoints"));
            let value: R = segs.iter().map(|s| s.value).sum();
            return Ok(Quad {
                value,
                abs_error: err,
                evaluations: evals,
            });
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .fold((0, R::neg_infinity()), |(bi, be), (i, s)| {
                if s.error > be {
                    (i, s.error)
                } else {
                    (bi, be)
                }
            });
        let s = segs.swap_remove(worst);
        let mid = R::lit(0.5) * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // Interval exhausted at machine resolution; keep its estimate.
            segs.push(Segment { error: R::zero(), ..s });
            continue;
        }
        segs.push(gk15(&f, s.a, mid));
        segs.push(gk15(&f, mid, s.b));
        evals += 30;
    }
}

/// Integral over consecutive panels `[p0,p1], [p1,p2], ...`.
pub fn integrate_panels<R: Real, F: Fn(R) -> R>(
    f: F,
    points: &[R],
    cfg: &QuadConfig,
) -> Result<Quad<R>> {
    let mut out = Quad {
        value: R::zero(),
        abs_error: R::zero(),
        evaluations: 0,
    };
    for w in points.windows(2) {
        let q = integrate(&f, w[0], w[1], cfg)?;
        out.value = out.value + q.value;
        out.abs_error = out.abs_error + q.abs_error;
        out.evaluations += q.evaluations;
    }
    Ok(out)
}

/// `int_a^inf f`, truncating at `cutoff` and doubling the truncation point
/// until the added tail is below `tail_rel` of the running total.
pub fn integrate_to_infinity<R: Real, F: Fn(R) -> R>(
    f: F,
    a: R,
    cutoff: R,
    tail_rel: f64,
    cfg: &QuadConfig,
) -> Result<Quad<R>> {
    let mut q = integrate(&f, a, cutoff, cfg)?;
    let mut lo = cutoff;
    for _ in 0..30 {
        let hi = lo + (lo - a).max(R::one());
        let tail = integrate(&f, lo, hi, cfg)?;
        q.value = q.value + tail.value;
        q.abs_error = q.abs_error + tail.abs_error;
        q.evaluations += tail.evaluations;
        if tail.value.abs() <= R::lit(tail_rel) * q.value.abs().max(R::lit(cfg.abs_tol)) {
            return Ok(q);
        }
        lo = hi;
    }
    Err(Error::Quadrature {
        estimate: q.value.as_f64(),
        achieved: q.abs_error.as_f64(),
        requested: tail_rel,
    })
}

/// Cauchy principal value of `int_a^b g(k) dk` where `g` has a simple pole
/// at `pole` in `(a, b)`.
///
/// The window `[pole - w, pole + w]` is folded onto `[0, w]`:
/// `int_0^w (g(pole + s) + g(pole - s)) ds`. The odd `1/s` parts of the two
/// branches cancel pointwise, which is the same as subtracting the residue
/// term `c/(k - pole)` and integrating it analytically over a symmetric
/// interval (where it vanishes). The outer pieces are regular.
pub fn principal_value<R: Real, F: Fn(R) -> R>(
    g: F,
    a: R,
    pole: R,
    b: R,
    cfg: &QuadConfig,
) -> Result<Quad<R>> {
    if !(a < pole && pole < b) {
        return Err(Error::Domain {
            func: "principal_value",
            arg: pole.as_f64(),
            reason: "pole must lie strictly inside the interval",
        });
    }
    let w = (pole - a).min(b - pole) * R::lit(0.5);
    let left = integrate(&g, a, pole - w, cfg)?;
    let right = integrate(&g, pole + w, b, cfg)?;
    let center = integrate(|s: R| g(pole + s) + g(pole - s), R::zero(), w, cfg)?;
    Ok(Quad {
        value: left.value + center.value + right.value,
        abs_error: left.abs_error + center.abs_error + right.abs_error,
        evaluations: left.evaluations + center.evaluations + right.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_transcendental() {
        let cfg = QuadConfig::default();
        let q = integrate(|x: f64| x * x, 0.0, 3.0, &cfg).unwrap();
        assert!((q.value - 9.0).abs() < 1e-13);
        let q = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, &cfg).unwrap();
        assert!((q.value - 2.0).abs() < 1e-13);
        let q = integrate(|x: f64| 1.0 / x.sqrt(), 1e-12, 1.0, &cfg).unwrap();
        assert!((q.value - 2.0).abs() < 1e-5);
    }

    #[test]
    fn semi_infinite_sech_squared() {
        let cfg = QuadConfig::default();
        let q = integrate_to_infinity(|x: f64| 1.0 / x.cosh().powi(2), 0.0, 10.0, 1e-14, &cfg).unwrap();
        assert!((q.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn principal_value_of_simple_pole() {
        // PV int_0^2 1/(x-1) dx = 0; PV int_0^3 x/(x-1) dx = 3 + ln 2
        let cfg = QuadConfig::default();
        let q = principal_value(|x: f64| 1.0 / (x - 1.0), 0.0, 1.0, 2.0, &cfg).unwrap();
        assert!(q.value.abs() < 1e-12);
        let q = principal_value(|x: f64| x / (x - 1.0), 0.0, 1.0, 3.0, &cfg).unwrap();
        assert!((q.value - (3.0 + 2f64.ln())).abs() < 1e-11);
        // nonlinear denominator: PV int_0^2 1/(x^2 - 1) dx = -ln(3)/2
        let q = principal_value(|x: f64| 1.0 / (x * x - 1.0), 0.0, 1.0, 2.0, &cfg).unwrap();
        assert!((q.value + 3f64.ln() / 2.0).abs() < 1e-11);
    }

    #[test]
    fn pole_outside_interval_is_rejected() {
        let cfg = QuadConfig::default();
        assert!(principal_value(|x: f64| x, 0.0, 2.0, 1.0, &cfg).is_err());
    }

    #[test]
    fn divergent_integrand_reports_residual() {
        let cfg = QuadConfig {
            max_intervals: 50,
            ..QuadConfig::default()
        };
        let r = integrate(|x: f64| 1.0 / x, 0.0, 1.0, &cfg);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
