//! Scalar abstraction shared by every solver in the crate.
//!
//! All numerical routines are written against [`Real`], which is implemented
//! for `f32` and `f64`. Accuracy targets quoted in the documentation refer to
//! `f64`; the `f32` instantiation is supported but only loosely checked.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display, LowerExp};

/// Floating point type the solvers are generic over.
pub trait Real:
    'static
    + Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
{
    /// Euler-Mascheroni constant.
    fn euler_gamma() -> Self {
        lit(0.577_215_664_901_532_9)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts an integer into `T`.
#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("integer representable in scalar type")
}

#[inline]
pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `x * 2^e` without intermediate overflow of the power of two.
pub(crate) fn ldexp<T: Real>(x: T, e: i32) -> T {
    let two = lit::<T>(2.0);
    let half = e / 2;
    x * two.powi(half) * two.powi(e - half)
}

/// Neumaier's variant of compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub(crate) fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub(crate) fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn scale(&mut self, factor: T) {
        self.sum *= factor;
        self.carry *= factor;
    }

    pub(crate) fn value(&self) -> T {
        self.sum + self.carry
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::<f64>::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-15).abs() < 1e-30);
    }

    #[test]
    fn ldexp_handles_extreme_exponents() {
        assert_eq!(ldexp(1.0f64, 3), 8.0);
        let tiny = ldexp(2f64.powi(1000), -1900);
        assert!((tiny / 2f64.powi(-900) - 1.0).abs() < 1e-15);
    }
}
