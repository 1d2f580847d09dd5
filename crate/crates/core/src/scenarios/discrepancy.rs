use std::fmt;

/// Printed and reference values of a closed-form quantity differ by more than
/// [`DISCREPANCY_TOL`].
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FormulaDiscrepancy {
    pub case: &'static str,
    pub quantity: &'static str,
    pub t: f64,
    pub printed: f64,
    pub reference: f64,
    /// `|printed - reference|`, infinite when the printed form is not finite.
    pub residual: f64,
}

impl fmt::Display for FormulaDiscrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case {} {} at t = {:.4}: printed {:.6e}, reference {:.6e}, residual {:.3e}",
            self.case, self.quantity, self.t, self.printed, self.reference, self.residual
        )
    }
}

/// Agreement required between a closed form and the generic pipeline.
pub const AGREEMENT_TOL: f64 = 1e-6;

/// Printed-versus-reference differences above this are reported.
pub const DISCREPANCY_TOL: f64 = 1e-4;

pub(crate) fn compare(
    out: &mut Vec<FormulaDiscrepancy>,
    case: &'static str,
    quantity: &'static str,
    t: f64,
    printed: f64,
    reference: f64,
) {
    let residual = if printed.is_finite() {
        (printed - reference).abs()
    } else {
        f64::INFINITY
    };
    if !(residual <= DISCREPANCY_TOL) {
        out.push(FormulaDiscrepancy {
            case,
            quantity,
            t,
            printed,
            reference,
            residual,
        });
    }
}

/// Compares two multisets of eigenvalues after sorting.
pub(crate) fn compare_spectra(
    out: &mut Vec<FormulaDiscrepancy>,
    case: &'static str,
    t: f64,
    printed: [f64; 4],
    reference: [f64; 4],
) {
    let sort = |mut v: [f64; 4]| {
        v.sort_by(|a, b| a.total_cmp(b));
        v
    };
    let (p, r) = (sort(printed), sort(reference));
    const NAMES: [&str; 4] = ["zeta(1st smallest)", "zeta(2nd)", "zeta(3rd)", "zeta(largest)"];
    for k in 0..4 {
        compare(out, case, NAMES[k], t, p[k], r[k]);
    }
}
