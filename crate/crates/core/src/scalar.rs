//! Scalar abstraction for the kernel.
//!
//! All core arithmetic is generic over [`Scalar`]; the two instantiations in
//! practice are exact big rationals (every structure check) and `f64` (the
//! numeric cone module only). Structure checks compare with `==`, which is
//! meaningful because they only ever run over the exact scalar.

use num_traits::{Num, Signed};
use std::fmt;

/// Coefficient ring for the kernel: ring ops, exact equality, signs, order.
pub trait Scalar: Num + Signed + PartialOrd + Clone + fmt::Debug + fmt::Display + 'static {}

impl<T> Scalar for T where T: Num + Signed + PartialOrd + Clone + fmt::Debug + fmt::Display + 'static
{}

/// Exact arbitrary-precision rational, the workhorse scalar.
pub type Rat = num_rational::BigRational;

/// The rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Lossy conversion to `f64` for the numeric paths.
pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().expect("rational out of f64 range")
}
