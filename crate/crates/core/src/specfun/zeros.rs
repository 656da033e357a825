//! Positive zeros `j_{n,t}` of `J_n`.

use super::bessel::{bessel_j, j_pair};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, Real};

/// The `index`-th positive zero of `J_order`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct BesselZero<T> {
    pub order: u32,
    pub index: u32,
    pub value: T,
}

const MAX_NEWTON_STEPS: usize = 100;

/// McMahon's large-zero expansion.
fn mcmahon<T: Real>(n: u32, t: u32) -> T {
    let mu = lit::<T>(4.0) * from_usize::<T>(n as usize).powi(2);
    let beta = (from_usize::<T>(t as usize) + from_usize::<T>(n as usize) / lit(2.0) - lit(0.25)) * T::PI();
    let eight_beta = lit::<T>(8.0) * beta;
    let m1 = mu - T::one();
    beta - m1 / eight_beta
        - lit::<T>(4.0) * m1 * (lit::<T>(7.0) * mu - lit(31.0)) / (lit::<T>(3.0) * eight_beta.powi(3))
        - lit::<T>(32.0) * m1 * (lit::<T>(83.0) * mu * mu - lit::<T>(982.0) * mu + lit(3779.0))
            / (lit::<T>(15.0) * eight_beta.powi(5))
}

/// Olver's uniform estimate of the first zero for large order.
fn olver_first<T: Real>(n: u32) -> T {
    let nu = from_usize::<T>(n as usize);
    let c = nu.cbrt();
    nu + lit::<T>(1.855_757_1) * c + lit::<T>(1.033_150) / c - lit::<T>(0.003_97) / nu - lit::<T>(0.0908) / (c * c * nu)
        + lit::<T>(0.043) / (c * nu * nu)
}

fn initial_guess<T: Real>(n: u32, t: u32) -> T {
    if t == 1 && n >= 1 {
        olver_first(n)
    } else {
        mcmahon(n, t)
    }
}

/// Brackets the `t`-th sign change of `J_n` on a unit grid starting at `n`.
///
/// `J_n` has no zero in `(0, n]` and consecutive zeros are more than one unit
/// apart, so every grid cell holds at most one zero.
fn bracket_zero<T: Real>(n: u32, t: u32) -> Result<(T, T, T)> {
    let step = T::one();
    let mut lo = from_usize::<T>(n as usize);
    let mut f_lo = bessel_j(n, lo)?;
    if n == 0 {
        f_lo = T::one();
    }
    let mut seen = 0;
    // Zeros are asymptotically pi apart; generous cap on the number of cells.
    let cap = (n as usize + 8 * t as usize + 16) * 2;
    for _ in 0..cap {
        let hi = lo + step;
        let f_hi = bessel_j(n, hi)?;
        if f_lo * f_hi < T::zero() || f_hi == T::zero() {
            seen += 1;
            if seen == t {
                return Ok((lo, hi, f_lo));
            }
        }
        lo = hi;
        if f_hi != T::zero() {
            f_lo = f_hi;
        }
    }
    Err(Error::NoConvergence {
        what: "bessel_j_zero bracketing",
        iterations: cap,
    })
}

/// `j_{n,t}`: McMahon/Olver initial guess refined by Newton steps that fall
/// back to bisection whenever they leave the bracket.
pub fn bessel_j_zero<T: Real>(n: u32, t: u32) -> Result<BesselZero<T>> {
    if t == 0 {
        return Err(Error::Domain {
            what: "bessel_j_zero",
            value: 0.0,
            expected: "zero index t >= 1",
        });
    }
    let (mut lo, mut hi, f_lo) = bracket_zero::<T>(n, t)?;
    let lo_positive = f_lo > T::zero();
    let guess = initial_guess::<T>(n, t);
    let mut x = if guess > lo && guess < hi {
        guess
    } else {
        (lo + hi) / lit(2.0)
    };
    let eps = T::epsilon();
    for _ in 0..MAX_NEWTON_STEPS {
        let pair = j_pair(n, x)?;
        let f = pair.this;
        if f == T::zero() {
            return Ok(BesselZero {
                order: n,
                index: t,
                value: x,
            });
        }
        if (f > T::zero()) == lo_positive {
            lo = x;
        } else {
            hi = x;
        }
        let df = pair.derivative(n, x);
        let newton = x - f / df;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) / lit(2.0)
        };
        let converged = (next - x).abs() <= lit::<T>(4.0) * eps * x || hi - lo <= lit::<T>(4.0) * eps * x;
        x = next;
        if converged {
            return Ok(BesselZero {
                order: n,
                index: t,
                value: x,
            });
        }
    }
    Err(Error::NoConvergence {
        what: "bessel_j_zero refinement",
        iterations: MAX_NEWTON_STEPS,
    })
}

/// Convenience wrapper returning only `j_{n,t}`.
pub fn bessel_j_zero_value<T: Real>(n: u32, t: u32) -> Result<T> {
    bessel_j_zero(n, t).map(|z| z.value)
}
