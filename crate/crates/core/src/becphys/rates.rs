//! Single-qubit decay, collective damping and coherent exchange coupling.

use std::cell::RefCell;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::modes::{ModeProvider, PlaneWave};
use super::params::{bogoliubov_energy, bogoliubov_group_velocity, resonant_k, DerivedParams};
use super::quadrature::{integrate, integrate_panels, principal_value, QuadConfig};

/// Rates in units of `mu / hbar` (or `1/s` after [`RateSet::to_si`]).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct RateSet<R: Real> {
    pub gamma: R,
    pub big_gamma: R,
    pub eta: R,
}

impl<R: Real> RateSet<R> {
    /// Dimensionless rates relative to `gamma`.
    pub fn relative(&self) -> RateSet<R> {
        RateSet {
            gamma: R::one(),
            big_gamma: self.big_gamma / self.gamma,
            eta: self.eta / self.gamma,
        }
    }

    pub fn to_si(&self, dp: &DerivedParams<R>) -> RateSet<R> {
        let s = R::one() / dp.time_unit;
        RateSet {
            gamma: self.gamma * s,
            big_gamma: self.big_gamma * s,
            eta: self.eta * s,
        }
    }
}

/// Numerical settings for [`rates_with`].
#[derive(Debug, Clone, Copy)]
pub struct RateOptions {
    /// Lower wavenumber limit of the exchange integral. `None` uses the
    /// lowest box mode `2 pi xi / L`.
    pub k_ir: Option<f64>,
    /// Initial upper cutoff (units of `1/xi`).
    pub k_max: f64,
    /// Relative size below which the extended tail is considered converged.
    pub tail_rel: f64,
    pub quad: QuadConfig,
}

impl Default for RateOptions {
    fn default() -> Self {
        Self {
            k_ir: None,
            k_max: 50.0,
            tail_rel: 1e-8,
            quad: QuadConfig {
                abs_tol: 1e-14,
                rel_tol: 1e-10,
                max_intervals: 4000,
            },
        }
    }
}

impl RateOptions {
    pub fn infrared_cutoff<R: Real>(&self, dp: &DerivedParams<R>) -> R {
        match self.k_ir {
            Some(k) => R::lit(k),
            None => R::TAU() / dp.length_reduced,
        }
    }
}

/// Soliton positions for separation `d`: `x1 = -d/2`, `x2 = d/2`.
#[inline]
pub fn positions<R: Real>(d: R) -> (R, R) {
    let h = R::lit(0.5) * d;
    (-h, h)
}

fn resonance<R: Real>(dp: &DerivedParams<R>) -> Result<(R, R)> {
    let e0 = dp.omega0_reduced;
    if !(e0 > R::zero()) {
        return Err(Error::NoResonance {
            omega0: dp.omega0.as_f64(),
        });
    }
    Ok((e0, resonant_k(e0)?))
}

/// Runs `body` with a fallible integrand adapter; the first error raised
/// inside the integrand takes precedence over the quadrature's own.
fn with_fallible<R: Real, T>(
    inner: impl Fn(R) -> Result<R>,
    body: impl FnOnce(&dyn Fn(R) -> R) -> Result<T>,
) -> Result<T> {
    let stash: RefCell<Option<Error>> = RefCell::new(None);
    let f = |k: R| match inner(k) {
        Ok(v) => v,
        Err(e) => {
            stash.borrow_mut().get_or_insert(e);
            R::nan()
        }
    };
    let out = body(&f);
    match stash.into_inner() {
        Some(e) => Err(e),
        None => out,
    }
}

/// Rates for separation `d` (units of `xi`) with plane-wave modes.
pub fn rates<R: Real>(d: R, dp: &DerivedParams<R>) -> Result<RateSet<R>> {
    rates_with(&PlaneWave, d, dp, &RateOptions::default())
}

/// Rates for separation `d` with an arbitrary mode provider.
///
/// `gamma` and `Gamma` use the resonance condition with density of states
/// `1/|d energy/dk|` at the resonant wavenumber, both `+-k` branches
/// included. `eta` is the principal value of the off-shell integral between
/// the infrared cutoff and a tail-converged upper limit.
pub fn rates_with<R: Real, P: ModeProvider<R> + ?Sized>(
    provider: &P,
    d: R,
    dp: &DerivedParams<R>,
    opts: &RateOptions,
) -> Result<RateSet<R>> {
    let (gamma, big_gamma) = damping_rates_with(provider, d, dp)?;
    let (e0, k0) = resonance(dp)?;
    let eta = exchange_coupling(provider, d, dp, opts, e0, k0)?;
    Ok(RateSet {
        gamma,
        big_gamma,
        eta,
    })
}

/// Rates at each separation in `ds`, evaluated in parallel and returned in
/// input order. The first error in input order is returned.
pub fn rates_profile<R: Real>(ds: &[R], dp: &DerivedParams<R>) -> Result<Vec<RateSet<R>>> {
    ds.par_iter().map(|&d| rates(d, dp)).collect()
}

/// `(gamma, Gamma)` for separation `d` with plane-wave modes, skipping the
/// exchange integral.
pub fn damping_rates<R: Real>(d: R, dp: &DerivedParams<R>) -> Result<(R, R)> {
    damping_rates_with(&PlaneWave, d, dp)
}

pub fn damping_rates_with<R: Real, P: ModeProvider<R> + ?Sized>(
    provider: &P,
    d: R,
    dp: &DerivedParams<R>,
) -> Result<(R, R)> {
    let (_, k0) = resonance(dp)?;
    let (x1, x2) = positions(d);
    let lt = dp.length_reduced;
    let two = R::lit(2.0);
    let dos = R::one() / bogoliubov_group_velocity(k0);
    let gamma = two * lt * provider.pair_correlation(k0, x1, x1, dp)? * dos;
    let gamma2 = two * lt * provider.pair_correlation(k0, x2, x2, dp)? * dos;
    if (gamma - gamma2).abs() > R::lit(1e-9) * gamma.abs() {
        return Err(Error::Numerical {
            context: "self-damping differs between the two qubits",
            residual: ((gamma - gamma2) / gamma).as_f64(),
        });
    }
    let big_gamma = two * lt * provider.pair_correlation(k0, x1, x2, dp)? * dos;
    if big_gamma.abs() > gamma * R::lit(1.0 + 1e-9) {
        return Err(Error::Numerical {
            context: "|Gamma| exceeds gamma",
            residual: (big_gamma.abs() / gamma - R::one()).as_f64(),
        });
    }
    Ok((gamma, big_gamma))
}

fn exchange_coupling<R: Real, P: ModeProvider<R> + ?Sized>(
    provider: &P,
    d: R,
    dp: &DerivedParams<R>,
    opts: &RateOptions,
    e0: R,
    k0: R,
) -> Result<R> {
    let (x1, x2) = positions(d);
    let k_ir = opts.infrared_cutoff(dp);
    if !(k_ir < k0) {
        return Err(Error::Config(format!(
            "infrared cutoff {} is not below the resonant wavenumber {}",
            k_ir.as_f64(),
            k0.as_f64()
        )));
    }
    let k_max = R::lit(opts.k_max).max(R::lit(2.0) * k0);
    let pref = dp.length_reduced / R::TAU();
    let integrand =
        |k: R| Ok(pref * provider.pair_correlation(k, x1, x2, dp)? / (bogoliubov_energy(k) - e0));
    with_fallible(integrand, |f| {
        let mut total = principal_value(f, k_ir, k0, k_max, &opts.quad)?.value;
        let mut lo = k_max;
        let mut scale = total.abs();
        let self_term = pref * provider.pair_correlation(k0, x1, x1, dp)?;
        scale = scale.max(self_term.abs());
        for _ in 0..20 {
            let hi = lo + lo;
            let tail = integrate(f, lo, hi, &opts.quad)?.value;
            total = total + tail;
            if tail.abs() <= R::lit(opts.tail_rel) * scale.max(total.abs()) {
                return Ok(total);
            }
            lo = hi;
        }
        Err(Error::Quadrature {
            estimate: total.as_f64(),
            achieved: f64::NAN,
            requested: opts.tail_rel,
        })
    })
}

/// `Gamma(d)` from the full `k` integral with the resonance condition
/// replaced by a Lorentzian of half-width `eps` (energy units of `mu`).
pub fn lorentzian_damping<R: Real, P: ModeProvider<R> + ?Sized>(
    provider: &P,
    d: R,
    dp: &DerivedParams<R>,
    eps: R,
    opts: &RateOptions,
) -> Result<R> {
    let (e0, k0) = resonance(dp)?;
    let (x1, x2) = positions(d);
    let k_ir = opts.infrared_cutoff(dp).min(k0 * R::lit(0.5));
    let k_max = R::lit(opts.k_max).max(R::lit(2.0) * k0);
    let w = eps / bogoliubov_group_velocity(k0);
    let mut pts = vec![k0];
    let mut step = w;
    while k0 - step > k_ir || k0 + step < k_max {
        if k0 - step > k_ir {
            pts.push(k0 - step);
        }
        if k0 + step < k_max {
            pts.push(k0 + step);
        }
        step = step * R::lit(4.0);
    }
    pts.push(k_ir);
    pts.push(k_max);
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    let pref = R::lit(2.0) * dp.length_reduced * eps / R::PI();
    let integrand = |k: R| {
        let de = bogoliubov_energy(k) - e0;
        Ok(pref * provider.pair_correlation(k, x1, x2, dp)? / (de * de + eps * eps))
    };
    with_fallible(integrand, |f| Ok(integrate_panels(f, &pts, &opts.quad)?.value))
}

/// Richardson extrapolation `2 G(eps/2) - G(eps)` of [`lorentzian_damping`].
pub fn lorentzian_extrapolated<R: Real, P: ModeProvider<R> + ?Sized>(
    provider: &P,
    d: R,
    dp: &DerivedParams<R>,
    eps: R,
    opts: &RateOptions,
) -> Result<R> {
    let coarse = lorentzian_damping(provider, d, dp, eps, opts)?;
    let fine = lorentzian_damping(provider, d, dp, eps * R::lit(0.5), opts)?;
    Ok(R::lit(2.0) * fine - coarse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::becphys::params::{derive_params, BecParams};

    fn reference() -> DerivedParams<f64> {
        derive_params(&BecParams::from_reduced(6.942_08, 0.2, 40.0, 400.0)).unwrap()
    }

    #[test]
    fn damping_ratio_is_cosine_of_phase() {
        let dp = reference();
        let k0 = resonant_k(dp.omega0_reduced).unwrap();
        for d in [0.0, 0.7, 2.5, 6.0, 13.0] {
            let r = rates(d, &dp).unwrap();
            assert!((r.big_gamma / r.gamma - (k0 * d).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn coincident_solitons() {
        let r = rates(0.0, &reference()).unwrap();
        assert!(r.gamma > 0.0);
        assert!((r.big_gamma - r.gamma).abs() <= 1e-12 * r.gamma);
    }

    #[test]
    fn rates_are_even_in_separation() {
        let dp = reference();
        for d in [1.2, 2.5, 4.0] {
            let a = rates(d, &dp).unwrap();
            let b = rates(-d, &dp).unwrap();
            assert!((a.big_gamma - b.big_gamma).abs() <= 1e-6 * a.gamma);
            assert!((a.eta - b.eta).abs() <= 1e-6 * a.gamma);
        }
    }

    #[test]
    fn no_resonance_below_gap() {
        let dp = derive_params(&BecParams::from_reduced(1.0, 0.2, 40.0, 400.0)).unwrap();
        assert!(dp.omega0_reduced < 0.0);
        assert!(matches!(rates(1.0, &dp), Err(Error::NoResonance { .. })));
    }

    #[test]
    fn lorentzian_oracle_agrees() {
        let dp = reference();
        let opts = RateOptions::default();
        for d in [0.0, 2.5] {
            let r = rates(d, &dp).unwrap();
            let l = lorentzian_extrapolated(&PlaneWave, d, &dp, 0.02, &opts).unwrap();
            assert!((l - r.big_gamma).abs() <= 1e-3 * r.gamma, "d={d}: {l} vs {}", r.big_gamma);
        }
    }

    #[test]
    fn exchange_coupling_converges_with_cutoff() {
        let dp = reference();
        let base = rates(2.5, &dp).unwrap();
        let opts = RateOptions {
            k_max: 80.0,
            ..RateOptions::default()
        };
        let wide = rates_with(&PlaneWave, 2.5, &dp, &opts).unwrap();
        assert!((base.eta - wide.eta).abs() < 1e-8 * base.gamma);
        assert!(base.eta.is_finite());
    }
}
