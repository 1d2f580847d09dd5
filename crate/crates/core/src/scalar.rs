//! Scalar abstraction shared by every numerical module.
//!
//! All of the linear algebra, dynamics and correlation code is written once
//! against [`Real`] and instantiated for `f64` (the working precision) or
//! `f32` (smoke-level precision; the tolerances quoted in the docs assume
//! `f64`).

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a count.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    /// Widening conversion used for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex scalar over a [`Real`].
pub type Cx<R> = Complex<R>;

#[allow(non_camel_case_types)]
pub type c64 = Complex<f64>;
#[allow(non_camel_case_types)]
pub type c32 = Complex<f32>;

#[inline]
pub(crate) fn cx<R: Real>(re: R, im: R) -> Cx<R> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cre<R: Real>(re: R) -> Cx<R> {
    Complex::new(re, R::zero())
}

/// `x log2 x` with the convention `0 log 0 = 0`.
#[inline]
pub fn xlog2x<R: Real>(x: R) -> R {
    if x > R::zero() {
        x * x.log2()
    } else {
        R::zero()
    }
}
