use thiserror::Error;

/// Failure modes of the library.
///
/// Numeric payloads are widened to `f64` so the error type does not depend on
/// the scalar the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M^dagger| = {max_asymmetry:.3e}")]
    NotHermitian { max_asymmetry: f64 },

    #[error("invalid density matrix: {reason}")]
    InvalidState { reason: String },

    #[error("unsupported dimension {dim}")]
    Dimension { dim: usize },

    #[error("{func}: argument {arg} outside domain ({reason})")]
    Domain {
        func: &'static str,
        arg: f64,
        reason: &'static str,
    },

    #[error("hyp2f1({a}, {b}; {c}; {z}) did not converge: {reason}")]
    Hypergeometric {
        a: f64,
        b: f64,
        c: f64,
        z: f64,
        reason: &'static str,
    },

    #[error("quadrature did not converge: estimate {estimate:.6e}, error {achieved:.3e} > {requested:.3e}")]
    Quadrature {
        estimate: f64,
        achieved: f64,
        requested: f64,
    },

    #[error("qubit gap omega0 = {omega0:.4e} <= 0: no resonant phonon")]
    NoResonance { omega0: f64 },

    #[error("|Gamma| = {big_gamma} must be < gamma = {gamma} for the closed-form evolution")]
    UnsupportedRegime { gamma: f64, big_gamma: f64 },

    #[error("initial coherence {element} = {magnitude:.3e} is outside the closed-form set; use integrate_master")]
    UnsupportedCoherence {
        element: &'static str,
        magnitude: f64,
    },

    #[error("integration invariant violated at t = {t}: {what} = {value:.3e}; reduce dt")]
    StepSize { t: f64, what: &'static str, value: f64 },

    #[error("reduced state rank-deficient: min eigenvalue {min_eigenvalue:.3e} < {tolerance:.1e}")]
    DegenerateReducedState { min_eigenvalue: f64, tolerance: f64 },

    #[error("numerical residual {residual:.3e} in {context}")]
    Numerical { context: &'static str, residual: f64 },

    #[error("degenerate denominator in closed form at t = {t}")]
    DegenerateDenominator { t: f64 },

    #[error("auxiliary-scalar identity {identity} violated by {residual:.3e}; re-derive from the master-equation oracle")]
    DerivationFailure {
        identity: &'static str,
        residual: f64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
