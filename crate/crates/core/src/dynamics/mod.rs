//! Two-qubit dissipative dynamics: closed-form Dicke-basis evolution and a
//! fixed-step integrator of the full master equation used as its oracle.
//!
//! Times are in units of the inverse of whatever unit the [`RateSet`] uses.
//!
//! [`RateSet`]: crate::becphys::RateSet

mod closed_form;
mod master;
mod state;

pub use closed_form::{check_closed_form_support, evolve_closed_form, to_lab_frame, COHERENCE_TOL};
pub use master::{integrate_master, integrate_master_sampled, liouvillian_apply, DEFAULT_DT};
pub use state::{
    dicke_diagonal, dicke_index, dicke_pure, dicke_to_product_unitary, to_dicke, to_product, Basis,
    Dicke, DickeState, Product, ProductState, TwoQubit,
};
