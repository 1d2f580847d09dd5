//! Superposition `|e1 g2>`: closed-form `C2` and `Q`.
//!
//! The state stays an X state with zero `|ee>` population. With
//! `kappa+- = cosh(Gt) +- cos(2 eta t)` the B marginal is
//! `diag(beta-, 1 - beta-)`, `beta+- = e^{-gt} kappa+- / 2`, and the L matrix
//! has an off-diagonal xy block `[[x, y], [y, -x]]` with
//! `x = -sinh(Gt)/sqrt(D)`, `y = sin(2 eta t)/sqrt(D)`,
//! `D = kappa- (2 e^{gt} - kappa-)`.

use crate::becphys::RateSet;
use crate::correlations::{classical_correlation_c2, quantum_discord};
use crate::dynamics::{evolve_closed_form, to_product};
use crate::error::{Error, Result};
use crate::scalar::{xlog2x, Real};

use super::config::{check_rates_closed_form, initial_state, ScenarioKind};
use super::discrepancy::{compare, compare_spectra, FormulaDiscrepancy};
use super::clamp_discord;

/// Scalars of the superposition closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseAScalars<R: Real> {
    pub kappa_plus: R,
    pub kappa_minus: R,
    /// Excited-state probabilities of A (`+`) and B (`-`).
    pub beta_plus: R,
    pub beta_minus: R,
    /// `xi+- = 1 - beta-+`.
    pub xi_plus: R,
    pub xi_minus: R,
    /// Spectrum `{0, 1 - e^{-gt} cosh(Gt), e^{-gt} cosh(Gt), 0}`.
    pub zeta: [R; 4],
}

/// Non-zero entries of the superposition L matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseALMatrix<R: Real> {
    /// `L11 = -L22`.
    pub x: R,
    /// `L12 = L21`.
    pub y: R,
    pub l33: R,
}

impl<R: Real> CaseALMatrix<R> {
    /// Largest eigenvalue of `L^T L`.
    pub fn lambda_max(&self) -> R {
        (self.x * self.x + self.y * self.y).max(self.l33 * self.l33)
    }
}

struct Trig<R> {
    e1: R,
    ch: R,
    sh: R,
    c: R,
    s: R,
}

fn trig<R: Real>(t: R, r: &RateSet<R>) -> Trig<R> {
    let ph = R::lit(2.0) * r.eta * t;
    Trig {
        e1: (-r.gamma * t).exp(),
        ch: (r.big_gamma * t).cosh(),
        sh: (r.big_gamma * t).sinh(),
        c: ph.cos(),
        s: ph.sin(),
    }
}

fn check_time<R: Real>(t: R) -> Result<()> {
    if t >= R::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            func: "case_a",
            arg: t.as_f64(),
            reason: "time must be finite and >= 0",
        })
    }
}

pub fn case_a_scalars<R: Real>(t: R, r: &RateSet<R>) -> CaseAScalars<R> {
    let Trig { e1, ch, c, .. } = trig(t, r);
    let half = R::lit(0.5);
    let kappa_plus = ch + c;
    let kappa_minus = ch - c;
    let beta_plus = half * e1 * kappa_plus;
    let beta_minus = half * e1 * kappa_minus;
    let z = R::zero();
    CaseAScalars {
        kappa_plus,
        kappa_minus,
        beta_plus,
        beta_minus,
        xi_plus: R::one() - beta_minus,
        xi_minus: R::one() - beta_plus,
        zeta: [z, R::one() - e1 * ch, e1 * ch, z],
    }
}

/// Linear entropy of the B marginal, `e^{-gt} kappa- (2 - e^{-gt} kappa-)`.
pub fn case_a_linear_entropy<R: Real>(t: R, r: &RateSet<R>) -> R {
    let Trig { e1, ch, c, .. } = trig(t, r);
    let km = ch - c;
    e1 * km * (R::lit(2.0) - e1 * km)
}

/// The L matrix; undefined where the B marginal is pure.
pub fn case_a_l_matrix<R: Real>(t: R, r: &RateSet<R>) -> Result<CaseALMatrix<R>> {
    let Trig { e1, ch, sh, c, s } = trig(t, r);
    let km = ch - c;
    let two_egt = R::lit(2.0) / e1;
    let den = km * (two_egt - km);
    if !(den > R::zero()) {
        return Err(Error::DegenerateDenominator { t: t.as_f64() });
    }
    let root = den.sqrt();
    Ok(CaseALMatrix {
        x: -sh / root,
        y: s / root,
        l33: (ch + c) / (km - two_egt),
    })
}

/// `(C2, Q, scalars)` at time `t`.
///
/// `C2 = S2 lambda_max` is evaluated with the denominators cancelled:
/// `max(e^{-2gt}(sinh^2 + sin^2), e^{-3gt} kappa- kappa+^2 / (2 - e^{-gt} kappa-))`,
/// which is regular at `t = 0` and gives `C2 = Q = 0` there.
pub fn case_a_correlations<R: Real>(t: R, r: &RateSet<R>) -> Result<(R, R, CaseAScalars<R>)> {
    check_rates_closed_form(r)?;
    check_time(t)?;
    let Trig { e1, sh, s, .. } = trig(t, r);
    let sc = case_a_scalars(t, r);
    let (kp, km) = (sc.kappa_plus, sc.kappa_minus);
    let xy = e1 * e1 * (sh * sh + s * s);
    let zz = e1 * e1 * e1 * km * kp * kp / (R::lit(2.0) - e1 * km);
    let c2 = xy.max(zz).max(R::zero());
    let marginals = xlog2x(sc.beta_plus) + xlog2x(sc.beta_minus) + xlog2x(sc.xi_plus) + xlog2x(sc.xi_minus);
    let joint: R = sc.zeta.iter().map(|&z| xlog2x(z)).sum();
    let q = -marginals + joint - c2;
    Ok((c2, clamp_discord(q), sc))
}

/// The superposition formulas as printed, kept for discrepancy reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseAPrinted<R: Real> {
    pub l11: R,
    /// `L22` is printed as `2 i sin(2 eta t)/sqrt(D)`, so its square is
    /// non-positive.
    pub l22_sq: R,
    pub l33: R,
    /// `kappa- e^{-2gt} (2 e^{gt} + kappa-)`.
    pub s2: R,
    pub c2: R,
    pub q: R,
    /// `zeta3,4 = e^{-gt}(cosh(Gt) +- sqrt(cos(4 eta t) + sinh^2(Gt)))/2`;
    /// NaN where the radicand is negative.
    pub zeta: [R; 4],
}

/// `x log2 x` that propagates NaN.
fn plog<R: Real>(x: R) -> R {
    if x.is_nan() {
        x
    } else {
        xlog2x(x)
    }
}

pub fn case_a_printed<R: Real>(t: R, r: &RateSet<R>) -> CaseAPrinted<R> {
    let Trig { e1, ch, sh, c, s } = trig(t, r);
    let two = R::lit(2.0);
    let half = R::lit(0.5);
    let egt = R::one() / e1;
    let (kp, km) = (ch + c, ch - c);
    let den = (km * (two * egt - km)).sqrt();
    let l11 = -two * sh / den;
    let l22_sq = -(two * s / den).powi(2);
    let l33 = kp / (km - two * egt);
    let s2 = km * e1 * e1 * (two * egt + km);
    let c2 = s2 * (l11 * l11).max(l22_sq).max(l33 * l33);
    let beta = [half * e1 * kp, half * e1 * km];
    let xi = [half * e1 * (two * egt - km), half * e1 * (two * egt - kp)];
    let rad = (R::lit(4.0) * r.eta * t).cos() + sh * sh;
    let rad = if rad >= R::zero() { rad.sqrt() } else { R::nan() };
    let zeta = [R::zero(), R::one() - e1 * ch, half * e1 * (ch + rad), half * e1 * (ch - rad)];
    let q = -(plog(beta[0]) + plog(beta[1])) + zeta.iter().map(|&z| plog(z)).sum::<R>()
        - (plog(xi[0]) + plog(xi[1]))
        - c2;
    CaseAPrinted {
        l11,
        l22_sq,
        l33,
        s2,
        c2,
        q,
        zeta,
    }
}

/// Generic-pipeline `(C2, Q)` for the superposition at time `t`.
pub fn case_a_pipeline<R: Real>(t: R, r: &RateSet<R>) -> Result<(R, R)> {
    let rho0 = initial_state(ScenarioKind::Superposition, R::zero())?;
    let ps = to_product(&evolve_closed_form(&rho0, r, t)?);
    Ok((classical_correlation_c2(&ps)?, quantum_discord(&ps)?))
}

/// Printed superposition formulas versus the closed form above.
pub fn case_a_discrepancies<R: Real>(t: R, r: &RateSet<R>) -> Result<Vec<FormulaDiscrepancy>> {
    let (c2, q, sc) = case_a_correlations(t, r)?;
    let p = case_a_printed(t, r);
    let tf = t.as_f64();
    let mut out = Vec::new();
    if let Ok(l) = case_a_l_matrix(t, r) {
        compare(&mut out, "A", "L11^2", tf, (p.l11 * p.l11).as_f64(), (l.x * l.x).as_f64());
        compare(&mut out, "A", "L22^2", tf, p.l22_sq.as_f64(), (l.y * l.y).as_f64());
        compare(&mut out, "A", "L33", tf, p.l33.as_f64(), l.l33.as_f64());
    }
    compare(&mut out, "A", "S2(rho_B)", tf, p.s2.as_f64(), case_a_linear_entropy(t, r).as_f64());
    compare_spectra(&mut out, "A", tf, p.zeta.map(|z| z.as_f64()), sc.zeta.map(|z| z.as_f64()));
    compare(&mut out, "A", "C2", tf, p.c2.as_f64(), c2.as_f64());
    compare(&mut out, "A", "Q", tf, p.q.as_f64(), q.as_f64());
    Ok(out)
}
