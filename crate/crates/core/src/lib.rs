pub mod becphys;
pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod qlinalg;
pub mod scenarios;
pub mod scalar;
pub mod validation;

pub use error::{Error, Result};
pub use scalar::{c32, c64, Real};
