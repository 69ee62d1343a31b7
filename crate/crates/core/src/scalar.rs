//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumCast};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Scalar: Float + FloatConst + NumCast + Sum + Debug + Display + Default + Send + Sync + 'static {
    /// Slack on the `<=` side of closed coefficient inequalities.
    ///
    /// `1e-12` for `f64`; widened to a few ulps for narrower types.
    fn class_tolerance() -> Self {
        let floor = Self::epsilon() * cst(16.0);
        let tol: Self = cst(1e-12);
        if floor > tol {
            floor
        } else {
            tol
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn cst<T: NumCast>(x: f64) -> T {
    <T as NumCast>::from(x).expect("literal representable in scalar type")
}

/// Converts a coefficient index into `T`.
#[inline]
pub fn idx<T: NumCast>(n: usize) -> T {
    <T as NumCast>::from(n).expect("index representable in scalar type")
}

/// `ln|z|`, computed as `0.5 ln(z conj(z))`.
#[inline]
pub fn log_modulus<T: Scalar>(z: num_complex::Complex<T>) -> T {
    cst::<T>(0.5) * z.norm_sqr().ln()
}
