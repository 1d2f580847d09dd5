//! Entangled and mixed scenarios: closed forms in terms of `delta` and `Z`.
//!
//! Both states stay X states with `rho_{eg,eg} = rho_{ge,ge} = P`,
//! `rho_{eg,ge} = y`, `rho_{ee,gg} = c` (real). With `u = E + P` the B (and
//! A) marginal is `diag(u, 1 - u)`, `S2 = 4 u (1 - u)`,
//! `L11 = (c + y)/sqrt(u(1-u))`, `L22 = (c - y)/sqrt(u(1-u))`,
//! `L33 = (E G - P^2)/(u(1-u))`.
//!
//! The printed forms are evaluated alongside for reporting. Where they
//! differ from the corrected ones the difference is reported, never folded
//! into the returned values.

use crate::becphys::RateSet;
use crate::correlations::{classical_correlation_c2, quantum_discord};
use crate::dynamics::{evolve_closed_form, to_product};
use crate::error::{Error, Result};
use crate::scalar::{xlog2x, Real};

use super::aux::{aux_scalars, ensure_aux_verified, AuxScalars};
use super::config::{check_alpha, check_rates_closed_form, initial_state, ScenarioKind};
use super::discrepancy::{compare, compare_spectra, FormulaDiscrepancy, AGREEMENT_TOL};
use super::clamp_discord;

/// Closed-form pieces of `C2` and `Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormTerms<R: Real> {
    pub s2: R,
    pub l11_sq: R,
    pub l22_sq: R,
    pub l33_sq: R,
    pub zeta: [R; 4],
    pub c2: R,
    pub q: R,
}

/// Which value a case result reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    ClosedForm,
    Pipeline,
}

/// Closed-form, printed and pipeline evaluations at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormResult<R: Real> {
    /// Authoritative `C2` and `Q`.
    pub c2: R,
    pub q: R,
    pub source: Source,
    pub closed: ClosedFormTerms<R>,
    pub printed: ClosedFormTerms<R>,
    pub pipeline_c2: R,
    pub pipeline_q: R,
    pub aux: AuxScalars<R>,
    /// Printed-versus-closed differences, plus closed-versus-pipeline ones.
    pub discrepancies: Vec<FormulaDiscrepancy>,
}

/// Entries of an X state with equal single-excitation populations.
struct XState<R> {
    e: R,
    p: R,
    y: R,
    c: R,
    g: R,
}

impl<R: Real> XState<R> {
    fn terms(&self) -> ClosedFormTerms<R> {
        let four = R::lit(4.0);
        let u = self.e + self.p;
        let v = self.p + self.g;
        let uv = u * v;
        let s2 = four * uv;
        let (a, b) = (self.c + self.y, self.c - self.y);
        let det = self.e * self.g - self.p * self.p;
        let (l11_sq, l22_sq, l33_sq) = if uv > R::zero() {
            (a * a / uv, b * b / uv, det * det / (uv * uv))
        } else {
            (R::zero(), R::zero(), R::zero())
        };
        // S2 * L^2 with uv cancelled where possible.
        let c2 = if uv > R::zero() {
            (four * a * a).max(four * b * b).max(four * det * det / uv)
        } else {
            R::zero()
        };
        let half = R::lit(0.5);
        let mid = half * (self.e + self.g);
        let rad = ((half * (self.e - self.g)).powi(2) + self.c * self.c).sqrt();
        let zeta = [mid + rad, mid - rad, self.p + self.y, self.p - self.y];
        let marg = R::lit(2.0) * (xlog2x(u) + xlog2x(v));
        let joint: R = zeta.iter().map(|&z| xlog2x(z.max(R::zero()))).sum();
        ClosedFormTerms {
            s2,
            l11_sq,
            l22_sq,
            l33_sq,
            zeta,
            c2,
            q: clamp_discord(-marg + joint - c2),
        }
    }
}

struct Sym<R: Real> {
    e1: R,
    egt: R,
    emg: R,
    d: R,
    cross: R,
    aux: AuxScalars<R>,
}

fn symbols<R: Real>(t: R, r: &RateSet<R>) -> Sym<R> {
    let (g, bg) = (r.gamma, r.big_gamma);
    let e1 = (-g * t).exp();
    let aux = aux_scalars(r, t);
    let two = R::lit(2.0);
    let sh = (bg * t).sinh();
    Sym {
        e1,
        egt: R::one() / e1,
        emg: (-bg * t).exp(),
        d: g * g - bg * bg,
        // 2 g G Z - (g^2 + G^2) sinh(Gt)
        cross: two * g * bg * aux.z - (g * g + bg * bg) * sh,
        aux,
    }
}

fn plog<R: Real>(x: R) -> R {
    if x.is_nan() {
        x
    } else {
        xlog2x(x)
    }
}

fn check_inputs<R: Real>(t: R, r: &RateSet<R>, alpha: R) -> Result<()> {
    check_rates_closed_form(r)?;
    check_alpha(alpha)?;
    if !(t >= R::zero()) || !t.is_finite() {
        return Err(Error::Domain {
            func: "x-state closed form",
            arg: t.as_f64(),
            reason: "time must be finite and >= 0",
        });
    }
    ensure_aux_verified()
}

fn entangled_state<R: Real>(s: &Sym<R>, alpha: R) -> XState<R> {
    let e = alpha * s.e1 * s.e1;
    let p = alpha * s.e1 * s.aux.delta / s.d;
    XState {
        e,
        p,
        y: alpha * s.e1 * s.cross / s.d,
        c: (alpha * (R::one() - alpha)).sqrt() * s.e1,
        g: R::one() - e - R::lit(2.0) * p,
    }
}

fn mixed_state<R: Real>(s: &Sym<R>, alpha: R) -> XState<R> {
    let third = R::one() / R::lit(3.0);
    let e = third * alpha * s.e1 * s.e1;
    let p = third * s.e1 * (s.d * s.emg + alpha * s.aux.delta) / s.d;
    XState {
        e,
        p,
        y: third * s.e1 * (s.d * s.emg + alpha * s.cross) / s.d,
        c: R::zero(),
        g: R::one() - e - R::lit(2.0) * p,
    }
}

/// Entangled-state closed form with corrected `S2` and `L33`.
pub fn case_b_closed<R: Real>(t: R, r: &RateSet<R>, alpha: R) -> Result<ClosedFormTerms<R>> {
    check_inputs(t, r, alpha)?;
    Ok(entangled_state(&symbols(t, r), alpha).terms())
}

/// Mixed-state closed form with corrected `L33` and `Q`.
pub fn case_c_closed<R: Real>(t: R, r: &RateSet<R>, alpha: R) -> Result<ClosedFormTerms<R>> {
    check_inputs(t, r, alpha)?;
    Ok(mixed_state(&symbols(t, r), alpha).terms())
}

/// Entangled-state formulas as printed.
pub fn case_b_printed<R: Real>(t: R, r: &RateSet<R>, alpha: R) -> ClosedFormTerms<R> {
    let s = symbols(t, r);
    let (a, d, dl, e1, egt) = (alpha, s.d, s.aux.delta, s.e1, s.egt);
    let one = R::one();
    let two = R::lit(2.0);
    let four = R::lit(4.0);
    let s2 = two * e1 * e1 / (d * d)
        * (two * a * d * d * (one - dl * egt + two * a * dl * e1) - two * a * a * (dl * dl + d * d * e1 * e1));
    let f = d * (egt - a * e1) - a * dl;
    let h = dl + d * e1;
    let den = (a * f * h).sqrt();
    let root = (a * (one - a)).sqrt();
    let l11 = (a * s.cross + d * root) / den;
    let l22 = (a * s.cross - d * root) / den;
    let l33 = (d * d * (one - a * e1 * e1) - d * two * a * dl * e1 * e1 - a * dl * dl) / (f * h);
    let c2 = s2 * (l11 * l11).max(l22 * l22).max(l33 * l33);
    let inner = (d * (two * a * e1 - egt) + two * a * dl).powi(2) + four * a * (one - a) * d * d;
    let pref = e1 / (two * d);
    let z12 = [pref * (d * egt - two * a * dl + inner.sqrt()), pref * (d * egt - two * a * dl - inner.sqrt())];
    let (g, bg) = (r.gamma, r.big_gamma);
    let z3 = (g + bg) * a * e1 / (g - bg) * (s.emg - e1);
    let z4 = (g - bg) * a * e1 / (g + bg) * ((bg * t).exp() - e1);
    let zeta = [z12[0], z12[1], z3, z4];
    let q = -two * plog(a * e1 / d * h) - two * plog(e1 / d * f) + zeta.iter().map(|&z| plog(z)).sum::<R>() - c2;
    ClosedFormTerms {
        s2,
        l11_sq: l11 * l11,
        l22_sq: l22 * l22,
        l33_sq: l33 * l33,
        zeta,
        c2,
        q,
    }
}

/// Mixed-state formulas as printed.
pub fn case_c_printed<R: Real>(t: R, r: &RateSet<R>, alpha: R) -> ClosedFormTerms<R> {
    let s = symbols(t, r);
    let (a, d, dl, e1, egt, emg) = (alpha, s.d, s.aux.delta, s.e1, s.egt, s.emg);
    let two = R::lit(2.0);
    let three = R::lit(3.0);
    let nine = R::lit(9.0);
    let u = d * (a * e1 + emg) + a * dl;
    let v = d * (three * egt - a * e1 - emg) - a * dl;
    let s2 = two * e1 * e1 / (nine * d * d) * (nine * d * d * egt * egt - u * u - v * v);
    let l11 = (a * s.cross + d * emg) / (u * v).sqrt();
    let l33 = (a * d * d * (three * egt - a * e1 - two * emg) - two * a * a * d * dl - (d * emg + a * dl)) / (u * v);
    let c2 = s2 * (l11 * l11).max(l33 * l33);
    let k = e1 / (three * d);
    let zeta = [
        a / three * e1 * e1,
        k * (d * (three * egt - a * e1 - two * emg) - two * a * dl),
        k * (two * d * emg + a * dl + a * s.cross),
        a * k * (dl - s.cross),
    ];
    let q = -two * plog(k * u) - two * plog(two * k * v) + zeta.iter().map(|&z| plog(z)).sum::<R>() - c2;
    ClosedFormTerms {
        s2,
        l11_sq: l11 * l11,
        l22_sq: l11 * l11,
        l33_sq: l33 * l33,
        zeta,
        c2,
        q,
    }
}

/// Generic-pipeline `(C2, Q)` for a scenario at time `t`.
pub fn pipeline_correlations<R: Real>(kind: ScenarioKind, t: R, r: &RateSet<R>, alpha: R) -> Result<(R, R)> {
    let rho0 = initial_state(kind, alpha)?;
    let ps = to_product(&evolve_closed_form(&rho0, r, t)?);
    Ok((classical_correlation_c2(&ps)?, quantum_discord(&ps)?))
}

fn report<R: Real>(
    case: &'static str,
    t: R,
    closed: &ClosedFormTerms<R>,
    printed: &ClosedFormTerms<R>,
    pipeline: (R, R),
) -> (Vec<FormulaDiscrepancy>, Source) {
    let tf = t.as_f64();
    let f = |x: R| x.as_f64();
    let mut out = Vec::new();
    compare(&mut out, case, "S2(rho_B)", tf, f(printed.s2), f(closed.s2));
    compare(&mut out, case, "L11^2", tf, f(printed.l11_sq), f(closed.l11_sq));
    compare(&mut out, case, "L22^2", tf, f(printed.l22_sq), f(closed.l22_sq));
    compare(&mut out, case, "L33^2", tf, f(printed.l33_sq), f(closed.l33_sq));
    compare_spectra(&mut out, case, tf, printed.zeta.map(f), closed.zeta.map(f));
    compare(&mut out, case, "C2", tf, f(printed.c2), f(closed.c2));
    compare(&mut out, case, "Q", tf, f(printed.q), f(closed.q));
    let tol = R::lit(AGREEMENT_TOL);
    let agrees = (closed.c2 - pipeline.0).abs() <= tol && (closed.q - pipeline.1).abs() <= tol;
    if agrees {
        (out, Source::ClosedForm)
    } else {
        for (name, c, p) in [("C2 (closed vs pipeline)", closed.c2, pipeline.0), ("Q (closed vs pipeline)", closed.q, pipeline.1)] {
            out.push(FormulaDiscrepancy {
                case,
                quantity: name,
                t: tf,
                printed: f(c),
                reference: f(p),
                residual: f((c - p).abs()),
            });
        }
        (out, Source::Pipeline)
    }
}

fn full<R: Real>(
    kind: ScenarioKind,
    case: &'static str,
    t: R,
    r: &RateSet<R>,
    alpha: R,
    closed: ClosedFormTerms<R>,
    printed: ClosedFormTerms<R>,
) -> Result<ClosedFormResult<R>> {
    let pipeline = pipeline_correlations(kind, t, r, alpha)?;
    let (discrepancies, source) = report(case, t, &closed, &printed, pipeline);
    let (c2, q) = match source {
        Source::ClosedForm => (closed.c2, closed.q),
        Source::Pipeline => pipeline,
    };
    Ok(ClosedFormResult {
        c2,
        q,
        source,
        closed,
        printed,
        pipeline_c2: pipeline.0,
        pipeline_q: pipeline.1,
        aux: aux_scalars(r, t),
        discrepancies,
    })
}

/// Entangled scenario at time `t`: closed form, printed form and pipeline.
pub fn case_b_correlations<R: Real>(t: R, r: &RateSet<R>, alpha: R) -> Result<ClosedFormResult<R>> {
    let closed = case_b_closed(t, r, alpha)?;
    full(ScenarioKind::Entangled, "B", t, r, alpha, closed, case_b_printed(t, r, alpha))
}

/// Mixed scenario at time `t`: closed form, printed form and pipeline.
pub fn case_c_correlations<R: Real>(t: R, r: &RateSet<R>, alpha: R) -> Result<ClosedFormResult<R>> {
    let closed = case_c_closed(t, r, alpha)?;
    full(ScenarioKind::Mixed, "C", t, r, alpha, closed, case_c_printed(t, r, alpha))
}
