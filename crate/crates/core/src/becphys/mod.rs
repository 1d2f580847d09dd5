//! Qubit and reservoir parameters of impurity atoms bound to dark solitons.
//!
//! Conversions to SI happen only in [`params`]; everything else works in
//! soliton units (`xi = 1`, `mu = 1`, `hbar = 1`).

pub mod modes;
pub mod params;
pub mod quadrature;
pub mod rates;
pub mod special;

pub use modes::{coupling_g, ModeProvider, PlaneWave};
pub use params::{
    bogoliubov_energy, derive_params, phi0, phi1, resonant_k, BecParams, DerivedParams,
    Normalization,
};
pub use rates::{damping_rates, damping_rates_with, rates, rates_profile, rates_with, RateOptions, RateSet};
pub use special::{gamma_fn, hyp2f1};
