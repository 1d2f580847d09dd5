use crate::error::{Error, Result};
use crate::scalar::Real;

use super::special::{gamma_fn, hyp2f1};

/// Reduced Planck constant in J s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Mass of a `87Rb` atom in kg.
pub const RB87_MASS: f64 = 1.443_160_648e-25;

/// Qubit operating window for the gap parameter, `lo <= nu < hi`.
pub const QUBIT_NU_RANGE: (f64, f64) = (0.33, 0.80);

/// Condensate and impurity parameters in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BecParams<R: Real> {
    /// Boson-boson coupling (J m), repulsive.
    pub g: R,
    /// Boson-impurity coupling (J m).
    pub chi: R,
    /// Boson mass (kg).
    pub big_m: R,
    /// Impurity mass (kg).
    pub m: R,
    /// Linear density (1/m).
    pub n0: R,
    /// Mode quantization length (m).
    pub quant_length: R,
}

impl<R: Real> BecParams<R> {
    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Config(format!("{what} (got {self:?})")))
            }
        };
        let fin = [self.g, self.chi, self.big_m, self.m, self.n0, self.quant_length]
            .iter()
            .all(|v| v.is_finite());
        check(fin, "parameters must be finite")?;
        check(self.g > R::zero(), "g must be > 0")?;
        check(self.chi >= R::zero(), "chi must be >= 0")?;
        check(self.big_m > R::zero() && self.m > R::zero(), "masses must be > 0")?;
        check(self.n0 > R::zero(), "n0 must be > 0")?;
        check(self.quant_length > R::zero(), "quant_length must be > 0")
    }

    /// Parameters specified in soliton units: `xi = 1`, `mu = g n0 = 1`,
    /// `hbar = 1`, boson mass 1. `n0_xi` is the dimensionless density.
    ///
    /// Only ratios (`chi/g`, `m/M`, `n0 xi`, `L/xi`) enter the reduced
    /// rates; the SI values returned here are a convenient embedding with
    /// `hbar` set to its physical value and `M` to the `87Rb` mass.
    pub fn from_reduced(chi_over_g: R, mass_ratio: R, n0_xi: R, length_over_xi: R) -> Self {
        Self::from_reduced_with_xi(chi_over_g, mass_ratio, n0_xi, length_over_xi, R::lit(1e-6))
    }

    /// As [`BecParams::from_reduced`] with healing length `xi` (m), which
    /// sets `mu / hbar = hbar / (M xi^2)`.
    pub fn from_reduced_with_xi(chi_over_g: R, mass_ratio: R, n0_xi: R, length_over_xi: R, xi: R) -> Self {
        let big_m = R::lit(RB87_MASS);
        let n0 = n0_xi / xi;
        let hbar = R::lit(HBAR);
        // xi^2 = hbar^2 / (M n0 g)
        let g = hbar * hbar / (big_m * n0 * xi * xi);
        Self {
            g,
            chi: chi_over_g * g,
            big_m,
            m: mass_ratio * big_m,
            n0,
            quant_length: length_over_xi * xi,
        }
    }
}

/// Normalization constants of the two bound states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization<R: Real> {
    pub a0: R,
    /// Value that makes `phi1` unit-normalized.
    pub a1: R,
    /// The closed form with the middle hypergeometric term weighted by one
    /// instead of two. Kept only for discrepancy reporting.
    pub a1_printed: R,
}

/// Quantities derived from [`BecParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams<R: Real> {
    /// Healing length (m).
    pub xi: R,
    /// Chemical potential `g n0` (J).
    pub mu: R,
    /// Gap parameter.
    pub nu: R,
    /// Qubit gap (rad/s). Negative when `nu < 1/2`.
    pub omega0: R,
    /// Qubit gap in units of `mu / hbar`.
    pub omega0_reduced: R,
    /// Width exponent of the bound-state profiles.
    pub width_exp: R,
    /// `None` when `width_exp == 0` (profiles not normalizable).
    pub norm: Option<Normalization<R>>,
    /// `1 + nu + sqrt(nu (nu + 1))` as a real number.
    pub n_bound: R,
    pub n_bound_floor: u32,
    /// `nu` inside [`QUBIT_NU_RANGE`].
    pub qubit_regime: bool,
    /// Time unit `hbar / mu` (s).
    pub time_unit: R,
    pub chi_over_g: R,
    /// `n0 xi`.
    pub n0_xi: R,
    /// `L / xi`.
    pub length_reduced: R,
}

/// Everything in [`DerivedParams`] that depends on `BecParams`.
pub fn derive_params<R: Real>(p: &BecParams<R>) -> Result<DerivedParams<R>> {
    p.validate()?;
    let one = R::one();
    let two = R::lit(2.0);
    let hbar = R::lit(HBAR);
    let xi = hbar / (p.big_m * p.n0 * p.g).sqrt();
    let mu = p.g * p.n0;
    let nu = ((-one + ((p.g * p.big_m + R::lit(4.0) * p.m * p.chi) / (p.g * p.big_m)).sqrt()) / two)
        .max(R::zero());
    let omega0 = hbar * (two * nu - one) / (two * p.m * xi * xi);
    let omega0_reduced = (two * nu - one) * p.big_m / (two * p.m);
    let width_exp = (two * p.chi * p.m / (p.g * p.big_m)).sqrt();
    let norm = if width_exp > R::zero() {
        Some(normalization(width_exp)?)
    } else {
        None
    };
    let n_bound = one + nu + (nu * (nu + one)).sqrt();
    let (lo, hi) = QUBIT_NU_RANGE;
    Ok(DerivedParams {
        xi,
        mu,
        nu,
        omega0,
        omega0_reduced,
        width_exp,
        norm,
        n_bound,
        n_bound_floor: n_bound.floor().to_u32().unwrap_or(u32::MAX),
        qubit_regime: nu >= R::lit(lo) && nu < R::lit(hi),
        time_unit: hbar / mu,
        chi_over_g: p.chi / p.g,
        n0_xi: p.n0 * xi,
        length_reduced: p.quant_length / xi,
    })
}

/// `A0` and `A1` for width exponent `alpha > 0`.
///
/// With `F(b) = 2F1(b, 2(1+alpha); b+1; -1)` the overlap
/// `int tanh^2 sech^(2 alpha)` equals
/// `2^(2(1+alpha)) (F(alpha)/alpha - 2 F(alpha+1)/(alpha+1) + F(alpha+2)/(alpha+2))`,
/// from expanding `tanh^2 = (1 - 2e^{-2x} + e^{-4x}) / (1 + e^{-2x})^2`.
pub fn normalization<R: Real>(alpha: R) -> Result<Normalization<R>> {
    if !(alpha > R::zero()) || !alpha.is_finite() {
        return Err(Error::Domain {
            func: "normalization",
            arg: alpha.as_f64(),
            reason: "width exponent must be finite and > 0",
        });
    }
    let one = R::one();
    let two = R::lit(2.0);
    let half = R::lit(0.5);
    let a0 = (R::PI().sqrt() * gamma_fn(alpha)? / gamma_fn(alpha + half)?).powf(-half);
    let b = two * (one + alpha);
    let f = |s: R| -> Result<R> { Ok(hyp2f1(s, b, s + one, -one)? / s) };
    let (f0, f1, f2) = (f(alpha)?, f(alpha + one)?, f(alpha + two)?);
    let pref = two.powf(b) * a0 * a0;
    let a1 = (pref * (f0 - two * f1 + f2)).powf(-half);
    let a1_printed = (pref * (f0 - f1 + f2)).powf(-half);
    Ok(Normalization { a0, a1, a1_printed })
}

/// `phi0` at `x` in units of `xi`, also in units of `xi^{-1/2}`.
pub fn phi0<R: Real>(x: R, dp: &DerivedParams<R>) -> R {
    match dp.norm {
        Some(n) => n.a0 * sech_pow(x, dp.width_exp),
        None => R::zero(),
    }
}

/// `phi1 = 2 A1 tanh(x) phi0(x)`.
pub fn phi1<R: Real>(x: R, dp: &DerivedParams<R>) -> R {
    match dp.norm {
        Some(n) => R::lit(2.0) * n.a1 * x.tanh() * n.a0 * sech_pow(x, dp.width_exp),
        None => R::zero(),
    }
}

/// `sech(x)^a` without overflow for large `|x|`.
pub(crate) fn sech_pow<R: Real>(x: R, a: R) -> R {
    let ax = x.abs();
    // sech x = 2 e^{-|x|} / (1 + e^{-2|x|})
    let e = (-ax).exp();
    (R::lit(2.0) * e / (R::one() + e * e)).powf(a)
}

/// Bogoliubov energy in units of `mu`, with `k` in units of `1/xi`.
#[inline]
pub fn bogoliubov_energy<R: Real>(k: R) -> R {
    let k2 = k * k;
    (k2 * (k2 + R::lit(2.0))).sqrt()
}

/// `d energy / d k` in reduced units, for `k >= 0`.
#[inline]
pub fn bogoliubov_group_velocity<R: Real>(k: R) -> R {
    let k2 = k * k;
    R::lit(2.0) * (k2 + R::one()) / (k2 + R::lit(2.0)).sqrt()
}

/// Positive wavenumber with `bogoliubov_energy(k) = e` (reduced units).
pub fn resonant_k<R: Real>(e: R) -> Result<R> {
    if !(e > R::zero()) || !e.is_finite() {
        return Err(Error::Domain {
            func: "resonant_k",
            arg: e.as_f64(),
            reason: "energy must be finite and > 0",
        });
    }
    // k^2 = -1 + sqrt(1 + e^2), written to avoid cancellation for small e.
    let e2 = e * e;
    let k2 = e2 / (R::one() + (R::one() + e2).sqrt());
    Ok(k2.sqrt())
}

/// `cosh^2` and `sinh^2` of the Bogoliubov angle at reduced wavenumber `k`,
/// fixed by `u^2 - v^2 = 1` with free-particle energy `k^2` and `mu = 1`.
pub fn bogoliubov_amplitudes<R: Real>(k: R) -> (R, R) {
    let e = k * k;
    let eps = bogoliubov_energy(k);
    let two = R::lit(2.0);
    ((e + R::one() + eps) / (two * eps), (e + R::one() - eps) / (two * eps))
}

/// Deviation of `int phi_l^2` from one for `l = 0, 1`, by adaptive
/// quadrature independent of the closed-form constants.
pub fn normalization_residuals<R: Real>(dp: &DerivedParams<R>) -> Result<(R, R)> {
    use super::quadrature::{integrate_to_infinity, QuadConfig};
    let cfg = QuadConfig {
        abs_tol: 1e-15,
        rel_tol: 1e-13,
        ..QuadConfig::default()
    };
    let two = R::lit(2.0);
    let n0 = integrate_to_infinity(|x: R| phi0(x, dp).powi(2), R::zero(), R::lit(20.0), 1e-16, &cfg)?;
    let n1 = integrate_to_infinity(|x: R| phi1(x, dp).powi(2), R::zero(), R::lit(20.0), 1e-16, &cfg)?;
    Ok((two * n0.value - R::one(), two * n1.value - R::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reduced(alpha: f64) -> DerivedParams<f64> {
        // width_exp^2 = 2 chi m / (g M): choose m/M = 0.5, chi/g = alpha^2
        derive_params(&BecParams::from_reduced(alpha * alpha, 0.5, 50.0, 400.0)).unwrap()
    }

    #[test]
    fn soliton_units_embedding() {
        let dp = reduced(1.0);
        assert!((dp.xi - 1e-6).abs() < 1e-18);
        let half = derive_params(&BecParams::from_reduced_with_xi(1.0f64, 0.5, 50.0, 400.0, 0.5e-6)).unwrap();
        assert!((half.xi - 0.5e-6).abs() < 1e-18);
        assert!((half.time_unit - dp.time_unit / 4.0).abs() < 1e-12 * dp.time_unit);
        assert!((dp.n0_xi - 50.0).abs() < 1e-10);
        assert!((dp.length_reduced - 400.0).abs() < 1e-9);
        assert!((dp.width_exp - 1.0).abs() < 1e-14);
        let gap = dp.omega0 * dp.time_unit;
        assert!((gap - dp.omega0_reduced).abs() < 1e-12 * gap.abs().max(1.0));
    }

    #[test]
    fn no_impurity_coupling() {
        let dp = derive_params(&BecParams::from_reduced(0.0, 0.3, 10.0, 100.0)).unwrap();
        assert_eq!(dp.nu, 0.0);
        assert!(dp.omega0 < 0.0);
        assert!(!dp.qubit_regime);
        assert!(dp.norm.is_none());
        assert_eq!(dp.n_bound, 1.0);
        assert_eq!(phi0(0.0, &dp), 0.0);
    }

    #[test]
    fn half_nu_closes_gap() {
        // 2 nu = 1 => (gM + 4 m chi)/(gM) = 4 => chi m / (g M) = 3/4
        let dp = derive_params(&BecParams::<f64>::from_reduced(1.5, 0.5, 10.0, 100.0)).unwrap();
        assert!((dp.nu - 0.5).abs() < 1e-14);
        assert!(dp.omega0.abs() < 1e-6);
        assert!(dp.qubit_regime);
        assert!((dp.n_bound - (1.5 + 0.75f64.sqrt())).abs() < 1e-14);
        assert_eq!(dp.n_bound_floor, 2);
    }

    #[test]
    fn a0_for_unit_width() {
        let n = normalization(1.0).unwrap();
        assert!((n.a0 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
        // int tanh^2 sech^2 = 2/3 => 4 A1^2 A0^2 (2/3) = 1 => A1^2 = 3/4
        assert!((n.a1 - 0.75f64.sqrt()).abs() < 1e-13);
        assert!((n.a1_printed - n.a1).abs() > 1e-2);
    }

    #[test]
    fn normalization_by_quadrature() {
        for alpha in [0.5, 1.0, 1.5, 2.0, 0.25, 3.0] {
            let (r0, r1) = normalization_residuals(&reduced(alpha)).unwrap();
            assert!(r0.abs() < 1e-8 && r1.abs() < 1e-8, "alpha={alpha}: {r0:e} {r1:e}");
        }
    }

    #[test]
    fn profiles_parity_and_decay() {
        let dp = reduced(1.3);
        assert_eq!(phi1(0.0, &dp), 0.0);
        assert_eq!(phi0(0.0, &dp), dp.norm.unwrap().a0);
        for x in [0.1, 0.7, 2.0, 5.0] {
            assert_eq!(phi0(x, &dp), phi0(-x, &dp));
            assert_eq!(phi1(x, &dp), -phi1(-x, &dp));
        }
        assert!(phi0(800.0, &dp) == 0.0 && phi1(800.0, &dp) == 0.0);
    }

    #[test]
    fn bogoliubov_fixtures() {
        assert_eq!(bogoliubov_energy(0.0), 0.0);
        assert!((bogoliubov_energy(1.0) - 3f64.sqrt()).abs() < 1e-15);
        assert!((bogoliubov_energy(1e4f64) / 1e8 - 1.0).abs() < 1e-7);
        assert!((resonant_k(3f64.sqrt()).unwrap() - 1.0).abs() < 1e-15);
        assert!(resonant_k(1e-12).unwrap() < 1e-11);
        assert!(matches!(resonant_k(0.0), Err(Error::Domain { .. })));
        let (c2, s2) = bogoliubov_amplitudes(0.7f64);
        assert!((c2 - s2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_params_rejected() {
        let mut p = BecParams::<f64>::from_reduced(1.0, 0.5, 10.0, 100.0);
        p.g = -1.0;
        assert!(matches!(derive_params(&p), Err(Error::Config(_))));
    }

    proptest! {
        #[test]
        fn resonant_k_round_trip(e in 1e-6f64..1e3) {
            let k = resonant_k(e).unwrap();
            prop_assert!(k > 0.0);
            prop_assert!((bogoliubov_energy(k) - e).abs() <= 1e-10 * e);
        }

        #[test]
        fn spectrum_even_and_monotone(k in 0.0f64..50.0, dk in 1e-6f64..1.0) {
            prop_assert_eq!(bogoliubov_energy(k), bogoliubov_energy(-k));
            prop_assert!(bogoliubov_energy(k + dk) > bogoliubov_energy(k));
            // group velocity matches a central difference
            let h = 1e-6;
            let fd = (bogoliubov_energy(k + 1.0 + h) - bogoliubov_energy(k + 1.0 - h)) / (2.0 * h);
            prop_assert!((fd - bogoliubov_group_velocity(k + 1.0)).abs() < 1e-6 * fd);
        }
    }
}
