//! The three initial-state case studies: closed-form `C2(t)` and `Q(t)`,
//! their printed counterparts, cross-checks against the generic pipeline,
//! and sudden-death scans.

mod aux;
mod case_a;
mod config;
mod death;
mod discrepancy;
mod series;
mod x_state;

pub use aux::{
    aux_identity_residuals, aux_scalars, derive_aux_scalars, ensure_aux_verified, verify_aux_grid, AuxScalars,
    AUX_IDENTITY_TOL,
};
pub use case_a::{
    case_a_correlations, case_a_discrepancies, case_a_l_matrix, case_a_linear_entropy, case_a_pipeline,
    case_a_printed, case_a_scalars, CaseALMatrix, CaseAPrinted, CaseAScalars,
};
pub use config::{initial_state, uniform_grid, ScenarioConfig, ScenarioKind};
pub use death::{
    death_windows, discord_trace, sudden_death_scan, sudden_death_scan_with, AlphaScan, DeathWindow, ScanResult,
    MAX_SCAN_DT, SCAN_DT, ZERO_THRESHOLD,
};
pub use discrepancy::{FormulaDiscrepancy, AGREEMENT_TOL, DISCREPANCY_TOL};
pub use series::{time_series, TimeSeriesRecord};
pub use x_state::{
    case_b_closed, case_b_correlations, case_b_printed, case_c_closed, case_c_correlations, case_c_printed,
    pipeline_correlations, ClosedFormResult, ClosedFormTerms, Source,
};

use crate::becphys::RateSet;
use crate::correlations::DISCORD_CLAMP;
use crate::error::Result;
use crate::scalar::Real;

pub(crate) fn clamp_discord<R: Real>(q: R) -> R {
    if q.abs() < R::lit(DISCORD_CLAMP) {
        R::zero()
    } else {
        q
    }
}

/// Closed-form `(C2, Q)` of a scenario at time `t`.
pub fn closed_correlations<R: Real>(kind: ScenarioKind, t: R, r: &RateSet<R>, alpha: R) -> Result<(R, R)> {
    match kind {
        ScenarioKind::Superposition => case_a_correlations(t, r).map(|(c2, q, _)| (c2, q)),
        ScenarioKind::Entangled => case_b_closed(t, r, alpha).map(|x| (x.c2, x.q)),
        ScenarioKind::Mixed => case_c_closed(t, r, alpha).map(|x| (x.c2, x.q)),
    }
}
