//! Integer-order Bessel functions of the first and second kind.
//!
//! `J_n` comes from Miller's backward recurrence normalized with
//! `J_0 + 2 sum J_2k = 1`. The same sweep feeds the Neumann series for `Y_0`
//! and `Y_1`, and `Y_n` follows by forward recurrence. Both recurrences carry a
//! binary exponent alongside the mantissa so that values far outside the
//! floating point range (for instance `J_150(0.5)` or `Y_150(0.5)`) stay
//! usable in products such as the Wronskian.

use crate::error::{Error, Result};
use crate::scalar::{from_usize, ldexp, lit, to_f64, CompensatedSum, Real};

/// Which kind of cylinder function to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BesselKind {
    J,
    Y,
}

/// A value stored as `mantissa * 2^exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled<T> {
    pub mantissa: T,
    pub exponent: i32,
}

impl<T: Real> Scaled<T> {
    pub fn new(mantissa: T, exponent: i32) -> Self {
        Self { mantissa, exponent }
    }

    /// The represented value; may overflow to infinity or underflow to zero.
    pub fn value(self) -> T {
        ldexp(self.mantissa, self.exponent)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        Self::new(self.mantissa * other.mantissa, self.exponent + other.exponent)
    }
}

/// `C_{n-1}(x)` and `C_n(x)` for one kind of Bessel function.
///
/// For `n = 0` the previous order is `C_{-1} = -C_1`, which keeps the
/// derivative identity `C_n' = C_{n-1} - (n/x) C_n` valid for every order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselPair<T> {
    pub prev: T,
    pub this: T,
}

impl<T: Real> BesselPair<T> {
    /// `C_n'(x)` from the recurrence.
    pub fn derivative(&self, n: u32, x: T) -> T {
        self.prev - from_usize::<T>(n as usize) / x * self.this
    }
}

/// `J_{n-1}, J_n, Y_{n-1}, Y_n` at one argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CylinderPairs<T> {
    pub j: BesselPair<T>,
    pub y: BesselPair<T>,
}

/// Power of two used to rescale the recurrences before they overflow.
fn rescale_exponent<T: Real>() -> i32 {
    let max_exp = to_f64(T::max_value().log2()).floor() as i32;
    max_exp / 4
}

/// Output of one backward-recurrence sweep at a fixed argument.
struct MillerSweep<T> {
    /// `J_i` for `i = 0..=top`, exponent-tracked.
    j: Vec<Scaled<T>>,
    y0: T,
    y1: T,
}

fn miller<T: Real>(x: T, top: u32) -> MillerSweep<T> {
    debug_assert!(x > T::zero() && top >= 1);
    let xf = to_f64(x);
    let reach = (top as f64).max(xf.ceil());
    let mut start = (reach + 30.0 + 12.0 * reach.cbrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let top = top as usize;

    let shift = rescale_exponent::<T>();
    let big = ldexp(T::one(), shift);
    let inv_big = ldexp(T::one(), -shift);

    let two_over_x = lit::<T>(2.0) / x;
    let mut stored = vec![Scaled::new(T::zero(), 0); top + 1];
    let mut exponent = 0i32;

    // p_{i+1}, p_i
    let mut upper = T::zero();
    let mut current = T::one();
    let mut norm = CompensatedSum::new();
    let mut neumann_y0 = CompensatedSum::new();
    let mut neumann_y1 = CompensatedSum::new();

    let mut i = start;
    loop {
        if i <= top {
            stored[i] = Scaled::new(current, exponent);
        }
        // Accumulate the contribution of index i.
        if i == 0 {
            norm.add(current);
        } else if i.is_multiple_of(2) {
            norm.add(lit::<T>(2.0) * current);
            let k = i / 2;
            let sign = if k.is_multiple_of(2) { T::one() } else { -T::one() };
            neumann_y0.add(sign * current / from_usize::<T>(k));
        } else if i == 1 {
            neumann_y1.add(-current);
        } else {
            let k = (i - 1) / 2;
            let sign = if k % 2 == 1 { T::one() } else { -T::one() };
            let weight = T::one() / from_usize::<T>(k) + T::one() / from_usize::<T>(k + 1);
            neumann_y1.add(sign * weight * current);
        }
        if i == 0 {
            break;
        }
        let lower = from_usize::<T>(i) * two_over_x * current - upper;
        upper = current;
        current = lower;
        if current.abs() > big {
            current *= inv_big;
            upper *= inv_big;
            norm.scale(inv_big);
            neumann_y0.scale(inv_big);
            neumann_y1.scale(inv_big);
            exponent += shift;
        }
        i -= 1;
    }

    let s = norm.value();
    let j: Vec<Scaled<T>> = stored
        .into_iter()
        .map(|p| Scaled::new(p.mantissa / s, p.exponent - exponent))
        .collect();
    let j0 = j[0].value();
    let j1 = j[1].value();

    let pi = T::PI();
    let two_over_pi = lit::<T>(2.0) / pi;
    let log_term = (x / lit::<T>(2.0)).ln() + T::euler_gamma();
    let y0 = two_over_pi * log_term * j0 - lit::<T>(4.0) / pi * (neumann_y0.value() / s);
    let y1 = -two_over_pi / x * j0 + two_over_pi * log_term * j1 + two_over_pi * (neumann_y1.value() / s);

    MillerSweep { j, y0, y1 }
}

/// Forward recurrence for `Y_{n-1}, Y_n` starting from `Y_0, Y_1`.
/// Both returned values share the exponent of the second component.
fn y_forward<T: Real>(n: u32, x: T, y0: T, y1: T) -> (Scaled<T>, Scaled<T>) {
    if n == 0 {
        return (Scaled::new(-y1, 0), Scaled::new(y0, 0));
    }
    let shift = rescale_exponent::<T>();
    let big = ldexp(T::one(), shift);
    let inv_big = ldexp(T::one(), -shift);
    let two_over_x = lit::<T>(2.0) / x;
    let (mut prev, mut this) = (y0, y1);
    let mut exponent = 0;
    for k in 1..n {
        let next = from_usize::<T>(k as usize) * two_over_x * this - prev;
        prev = this;
        this = next;
        if this.abs() > big {
            this *= inv_big;
            prev *= inv_big;
            exponent += shift;
        }
    }
    (Scaled::new(prev, exponent), Scaled::new(this, exponent))
}

fn check_j_arg<T: Real>(x: T) -> Result<()> {
    if x.is_nan() || x < T::zero() || x.is_infinite() {
        return Err(Error::Domain {
            what: "bessel_j",
            value: to_f64(x),
            expected: "0 <= x < inf",
        });
    }
    Ok(())
}

fn check_y_arg<T: Real>(x: T) -> Result<()> {
    if x.is_nan() || x <= T::zero() || x.is_infinite() {
        return Err(Error::Domain {
            what: "bessel_y",
            value: to_f64(x),
            expected: "0 < x < inf",
        });
    }
    Ok(())
}

fn j_limit_at_zero<T: Real>(n: u32) -> Scaled<T> {
    if n == 0 {
        Scaled::new(T::one(), 0)
    } else {
        Scaled::new(T::zero(), 0)
    }
}

/// `J_n(x)` as mantissa and binary exponent.
pub fn bessel_j_scaled<T: Real>(n: u32, x: T) -> Result<Scaled<T>> {
    check_j_arg(x)?;
    if x == T::zero() {
        return Ok(j_limit_at_zero(n));
    }
    let sweep = miller(x, n.max(1));
    Ok(sweep.j[n as usize])
}

/// `Y_n(x)` as mantissa and binary exponent.
pub fn bessel_y_scaled<T: Real>(n: u32, x: T) -> Result<Scaled<T>> {
    check_y_arg(x)?;
    let sweep = miller(x, 1);
    Ok(y_forward(n, x, sweep.y0, sweep.y1).1)
}

/// Bessel function of the first kind `J_n(x)` for `x >= 0`.
pub fn bessel_j<T: Real>(n: u32, x: T) -> Result<T> {
    bessel_j_scaled(n, x).map(Scaled::value)
}

/// Bessel function of the second kind `Y_n(x)` for `x > 0`.
///
/// Overflows to `-inf` deep in the non-oscillatory region `x << n`.
pub fn bessel_y<T: Real>(n: u32, x: T) -> Result<T> {
    bessel_y_scaled(n, x).map(Scaled::value)
}

/// `C_n'(x)` via `C_n' = C_{n-1} - (n/x) C_n`.
pub fn bessel_deriv<T: Real>(kind: BesselKind, n: u32, x: T) -> Result<T> {
    match kind {
        BesselKind::J => {
            check_j_arg(x)?;
            if x == T::zero() {
                // J_0'(0) = 0, J_1'(0) = 1/2, J_n'(0) = 0 otherwise.
                return Ok(if n == 1 { lit(0.5) } else { T::zero() });
            }
            Ok(j_pair(n, x)?.derivative(n, x))
        }
        BesselKind::Y => {
            check_y_arg(x)?;
            Ok(y_pair(n, x)?.derivative(n, x))
        }
    }
}

/// `J_{n-1}(x), J_n(x)` from a single sweep.
pub fn j_pair<T: Real>(n: u32, x: T) -> Result<BesselPair<T>> {
    check_j_arg(x)?;
    if x == T::zero() {
        let prev = if n == 0 {
            T::zero()
        } else {
            j_limit_at_zero::<T>(n - 1).value()
        };
        return Ok(BesselPair {
            prev,
            this: j_limit_at_zero::<T>(n).value(),
        });
    }
    let sweep = miller(x, n.max(1));
    Ok(j_pair_from(&sweep, n))
}

fn j_pair_from<T: Real>(sweep: &MillerSweep<T>, n: u32) -> BesselPair<T> {
    let this = sweep.j[n as usize].value();
    let prev = if n == 0 {
        -sweep.j[1].value()
    } else {
        sweep.j[n as usize - 1].value()
    };
    BesselPair { prev, this }
}

/// `Y_{n-1}(x), Y_n(x)`.
pub fn y_pair<T: Real>(n: u32, x: T) -> Result<BesselPair<T>> {
    check_y_arg(x)?;
    let sweep = miller(x, 1);
    let (prev, this) = y_forward(n, x, sweep.y0, sweep.y1);
    Ok(BesselPair {
        prev: prev.value(),
        this: this.value(),
    })
}

/// Both kinds at orders `n-1` and `n` from one backward sweep.
pub fn cylinder_pairs<T: Real>(n: u32, x: T) -> Result<CylinderPairs<T>> {
    check_y_arg(x)?;
    let sweep = miller(x, n.max(1));
    let (yp, yn) = y_forward(n, x, sweep.y0, sweep.y1);
    Ok(CylinderPairs {
        j: j_pair_from(&sweep, n),
        y: BesselPair {
            prev: yp.value(),
            this: yn.value(),
        },
    })
}
