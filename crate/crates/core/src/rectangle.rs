//! Buckling of the rectangle `(0, pi) x (-ell, ell)`, clamped on the long
//! edges `y = +-ell` and simply supported (Navier) on the short edges.
//!
//! Eigenfunctions separate as `h_{k,m}(y) sin(m x)` with
//! `lambda_{k,m} = m^2 + gamma_{k,m}^2`, where `gamma` solves
//! `gamma tan(gamma ell) = -m tanh(m ell)` (even `h`) or
//! `tan(gamma ell) / gamma = tanh(m ell) / m` (odd `h`).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootfind::{refine, Bracket};
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Lower end of the half-height scan in [`find_ell_for_nodal_count`].
pub const ELL_SCAN_MIN: f64 = 1e-3;
/// Upper end of the half-height scan in [`find_ell_for_nodal_count`].
pub const ELL_SCAN_MAX: f64 = 10.0;
const ELL_SCAN_RATIO: f64 = 0.95;

/// `tanh(m ell)` is 1 to double precision beyond this argument.
const TANH_SATURATION: f64 = 30.0;

/// Relative residual allowed in the original `tan` form of the equations.
const TAN_RESIDUAL: f64 = 1e-9;

/// The rectangle `(0, pi) x (-ell, ell)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RectangleConfig<T> {
    ell: T,
}

impl<T: Real> RectangleConfig<T> {
    pub fn new(ell: T) -> Result<Self> {
        check_ell(ell)?;
        Ok(Self { ell })
    }

    pub fn ell(&self) -> T {
        self.ell
    }
}

fn check_ell<T: Real>(ell: T) -> Result<()> {
    if ell > T::zero() && ell.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "rectangle",
            value: to_f64(ell),
            expected: "half-height ell > 0",
        })
    }
}

fn check_m<T: Real>(m: T, what: &'static str) -> Result<()> {
    if m > T::zero() && m.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: to_f64(m),
            expected: "wavenumber m > 0",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// One branch datum `(k, m)` of the rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RectMode<T> {
    pub k: u32,
    pub m: T,
    pub ell: T,
    pub parity: Parity,
    pub gamma: T,
    pub lambda: T,
}

fn tanh_ml<T: Real>(m: T, ell: T) -> T {
    let x = m * ell;
    if x >= lit(TANH_SATURATION) {
        T::one()
    } else {
        x.tanh()
    }
}

/// Solves `f = 0` on `(lo, hi)`, where the endpoint values are known to have
/// opposite signs analytically. Rounding can spoil that at an endpoint only
/// when the root sits within a few ulps of it; the endpoint is returned then.
fn solve_on<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, scale: T) -> Result<T> {
    let (f_lo, f_hi) = (f(lo), f(hi));
    let slack = lit::<T>(64.0) * T::epsilon() * scale;
    if f_lo * f_hi >= T::zero() {
        if f_hi.abs() <= slack {
            return Ok(hi);
        }
        if f_lo.abs() <= slack {
            return Ok(lo);
        }
    }
    let bracket = Bracket::from_values(lo, hi, f_lo, f_hi)?;
    let xtol = lit::<T>(4.0) * T::epsilon() * hi;
    Ok(refine(&f, bracket, xtol)?.root)
}

/// `gamma^{(j), even}_m`: the root of `gamma sin(gamma ell) + m tanh(m ell)
/// cos(gamma ell)` in `((pi/2 + j pi)/ell, (pi + j pi)/ell)`.
pub fn gamma_even<T: Real>(m: T, ell: T, j: u32) -> Result<T> {
    check_m(m, "gamma_even")?;
    check_ell(ell)?;
    let pi = T::PI();
    let jf = from_usize::<T>(j as usize);
    let lo = (pi / lit(2.0) + jf * pi) / ell;
    let hi = (pi + jf * pi) / ell;
    let mt = m * tanh_ml(m, ell);
    let f = |g: T| g * (g * ell).sin() + mt * (g * ell).cos();
    let gamma = solve_on(f, lo, hi, hi + mt)?;
    let residual = gamma * (gamma * ell).tan() + mt;
    if !(residual.abs() <= lit::<T>(TAN_RESIDUAL) * (T::one() + mt)) {
        return Err(Error::NoConvergence {
            what: "gamma_even residual check",
            iterations: crate::rootfind::MAX_REFINE_ITERATIONS,
        });
    }
    Ok(gamma)
}

/// `gamma^{(j), odd}_m`: the root of `m sin(gamma ell) - gamma tanh(m ell)
/// cos(gamma ell)` in `((pi + j pi)/ell, (3 pi/2 + j pi)/ell)`.
pub fn gamma_odd<T: Real>(m: T, ell: T, j: u32) -> Result<T> {
    check_m(m, "gamma_odd")?;
    check_ell(ell)?;
    let pi = T::PI();
    let jf = from_usize::<T>(j as usize);
    let lo = (pi + jf * pi) / ell;
    let hi = (lit::<T>(1.5) * pi + jf * pi) / ell;
    let t = tanh_ml(m, ell);
    let f = |g: T| m * (g * ell).sin() - g * t * (g * ell).cos();
    let gamma = solve_on(f, lo, hi, hi + m)?;
    let lhs = (gamma * ell).tan() / gamma;
    let rhs = t / m;
    if !((lhs - rhs).abs() <= lit::<T>(TAN_RESIDUAL) * (T::one() + rhs.abs())) {
        return Err(Error::NoConvergence {
            what: "gamma_odd residual check",
            iterations: crate::rootfind::MAX_REFINE_ITERATIONS,
        });
    }
    Ok(gamma)
}

/// `gamma_{k,m}` in `(k pi/(2 ell), (k+1) pi/(2 ell))`: odd `k` uses the even
/// family with `j = (k-1)/2`, even `k` the odd family with `j = (k-2)/2`.
pub fn mode_gamma<T: Real>(k: u32, m: T, ell: T) -> Result<RectMode<T>> {
    if k == 0 {
        return Err(Error::Domain {
            what: "mode_gamma",
            value: 0.0,
            expected: "branch index k >= 1",
        });
    }
    let (parity, gamma) = if k % 2 == 1 {
        (Parity::Even, gamma_even(m, ell, (k - 1) / 2)?)
    } else {
        (Parity::Odd, gamma_odd(m, ell, (k - 2) / 2)?)
    };
    Ok(RectMode {
        k,
        m,
        ell,
        parity,
        gamma,
        lambda: m * m + gamma * gamma,
    })
}

/// `cosh(m y) / cosh(m ell)` without overflow.
fn cosh_ratio<T: Real>(m: T, y: T, ell: T) -> T {
    let y = y.abs();
    let two = lit::<T>(2.0);
    (m * (y - ell)).exp() * (T::one() + (-two * m * y).exp()) / (T::one() + (-two * m * ell).exp())
}

/// `sinh(m y) / sinh(m ell)` without overflow or cancellation at small `m`.
fn sinh_ratio<T: Real>(m: T, y: T, ell: T) -> T {
    let two = lit::<T>(2.0);
    let ay = y.abs();
    let r = (m * (ay - ell)).exp() * (-two * m * ay).exp_m1() / (-two * m * ell).exp_m1();
    if y < T::zero() {
        -r
    } else {
        r
    }
}

impl<T: Real> RectMode<T> {
    /// `h(y)` scaled by `1/cosh(m ell)` (even) or `1/sinh(m ell)` (odd):
    /// `cosh(my)/cosh(m ell) - cos(gamma y)/cos(gamma ell)` or
    /// `sinh(my)/sinh(m ell) - sin(gamma y)/sin(gamma ell)`.
    pub fn h(&self, y: T) -> T {
        let (m, g, ell) = (self.m, self.gamma, self.ell);
        match self.parity {
            Parity::Even => cosh_ratio(m, y, ell) - (g * y).cos() / (g * ell).cos(),
            Parity::Odd => sinh_ratio(m, y, ell) - (g * y).sin() / (g * ell).sin(),
        }
    }

    /// `h'(y)` with the same scaling as [`RectMode::h`].
    pub fn h_prime(&self, y: T) -> T {
        let (m, g, ell) = (self.m, self.gamma, self.ell);
        match self.parity {
            Parity::Even => m * sinh_ratio_over_cosh(m, y, ell) + g * (g * y).sin() / (g * ell).cos(),
            Parity::Odd => m * cosh_over_sinh(m, y, ell) - g * (g * y).cos() / (g * ell).sin(),
        }
    }
}

/// `sinh(m y) / cosh(m ell)`.
fn sinh_ratio_over_cosh<T: Real>(m: T, y: T, ell: T) -> T {
    let two = lit::<T>(2.0);
    let ay = y.abs();
    let r = (m * (ay - ell)).exp() * -(-two * m * ay).exp_m1() / (T::one() + (-two * m * ell).exp());
    if y < T::zero() {
        -r
    } else {
        r
    }
}

/// `cosh(m y) / sinh(m ell)`.
fn cosh_over_sinh<T: Real>(m: T, y: T, ell: T) -> T {
    let two = lit::<T>(2.0);
    let ay = y.abs();
    (m * (ay - ell)).exp() * (T::one() + (-two * m * ay).exp()) / -(-two * m * ell).exp_m1()
}

/// `h_{k,m}(y)` for `y` in `[-ell, ell]` (scaled as in [`RectMode::h`]).
pub fn h_profile<T: Real>(mode: &RectMode<T>, y: T) -> Result<T> {
    if !(y.abs() <= mode.ell) {
        return Err(Error::Domain {
            what: "h_profile",
            value: to_f64(y),
            expected: "-ell <= y <= ell",
        });
    }
    Ok(mode.h(y))
}

/// `Phi(m) = gamma_{1,m}`, decreasing from `pi/ell` to `pi/(2 ell)`.
pub fn phi<T: Real>(m: T, ell: T) -> Result<T> {
    gamma_even(m, ell, 0)
}

/// `lambda_{1,m} = m^2 + Phi(m)^2` for real `m > 0`.
pub fn lambda_1m<T: Real>(m: T, ell: T) -> Result<T> {
    let g = phi(m, ell)?;
    Ok(m * m + g * g)
}

/// Real minimizer of `m -> lambda_{1,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealMinimum<T> {
    pub m_star: T,
    pub lambda_star: T,
}

/// Golden-section minimization of `lambda_{1,m}` over `m > 0`.
///
/// The bracket starts at `(0, 1, 2)`, using the limit `(pi/ell)^2` at `m = 0`,
/// and is shifted outward (or the middle point pulled towards 0) until the
/// middle value is below both ends.
pub fn minimize_lambda1_real<T: Real>(ell: T, xtol: T) -> Result<RealMinimum<T>> {
    check_ell(ell)?;
    let no_bracket = || Error::NoMinimumBracket { ell: to_f64(ell) };
    let f = |m: T| lambda_1m(m, ell);
    let at_zero = (T::PI() / ell).powi(2);

    let mut mid = T::one();
    let mut f_mid = f(mid)?;
    while f_mid >= at_zero {
        mid /= lit(2.0);
        if mid < lit(1e-12) {
            return Err(no_bracket());
        }
        f_mid = f(mid)?;
    }
    let mut lo = T::zero();
    let mut hi = mid * lit(2.0);
    let mut f_hi = f(hi)?;
    while f_hi <= f_mid {
        lo = mid;
        mid = hi;
        f_mid = f_hi;
        hi *= lit(2.0);
        if hi > lit(1e12) {
            return Err(no_bracket());
        }
        f_hi = f(hi)?;
    }

    let inv_phi = lit::<T>(0.618_033_988_749_894_9);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > xtol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        }
        if hi - lo <= T::epsilon() * hi {
            break;
        }
    }
    let m_star = (lo + hi) / lit(2.0);
    Ok(RealMinimum {
        m_star,
        lambda_star: f(m_star)?,
    })
}

/// First eigenvalue of the rectangle and its integer wavenumber.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RectFirstResult<T> {
    pub ell: T,
    pub m_opt: u32,
    pub lambda1: T,
    /// `h_{1,m}` is positive and `sin(m x)` has `m` sign sectors on `(0, pi)`.
    pub nodal_domains: u32,
}

/// `min_{m >= 1} lambda_{1,m}` over integers, stopping once `m^2` alone
/// exceeds the best value (valid since `lambda_{1,m} > m^2`).
pub fn first_eigenvalue_rect<T: Real>(ell: T) -> Result<RectFirstResult<T>> {
    check_ell(ell)?;
    let mut best = lambda_1m(T::one(), ell)?;
    let mut m_opt = 1u32;
    let mut m = 2u32;
    loop {
        let mf = from_usize::<T>(m as usize);
        if mf * mf > best {
            break;
        }
        let value = lambda_1m(mf, ell)?;
        if value < best {
            best = value;
            m_opt = m;
        }
        m += 1;
    }
    Ok(RectFirstResult {
        ell,
        m_opt,
        lambda1: best,
        nodal_domains: m_opt,
    })
}

fn m_opt<T: Real>(ell: T) -> Result<u32> {
    first_eigenvalue_rect(ell).map(|r| r.m_opt)
}

/// Largest `ell` in the scan range below which the first eigenfunction has
/// more than `n` nodal domains, refined to relative `1e-10`. This is where
/// `lambda_{1,n}(ell)` and `lambda_{1,n+1}(ell)` cross.
fn transition_below<T: Real>(n: u32) -> Result<T> {
    let not_found = || Error::NodalCountNotFound {
        n,
        lo: ELL_SCAN_MIN,
        hi: ELL_SCAN_MAX,
    };
    let ratio = lit::<T>(ELL_SCAN_RATIO);
    let floor = lit::<T>(ELL_SCAN_MIN);
    let mut upper = lit::<T>(ELL_SCAN_MAX);
    if m_opt(upper)? > n {
        return Err(not_found());
    }
    loop {
        let lower = upper * ratio;
        if lower < floor {
            return Err(not_found());
        }
        if m_opt(lower)? > n {
            let (mut hi, mut lo) = (upper, lower);
            while hi - lo > lit::<T>(1e-10) * hi {
                let mid = (hi + lo) / lit(2.0);
                if m_opt(mid)? > n {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok((hi + lo) / lit(2.0));
        }
        upper = lower;
    }
}

/// A half-height `ell` whose first eigenfunction has exactly `n` nodal
/// domains: the geometric midpoint between the transitions to `n` and to
/// `n + 1` domains (for `n = 1`, between the first transition and the top of
/// the scan range). Witnesses strictly decrease in `n`.
pub fn find_ell_for_nodal_count<T: Real>(n: u32) -> Result<T> {
    if n == 0 {
        return Err(Error::Domain {
            what: "find_ell_for_nodal_count",
            value: 0.0,
            expected: "nodal count n >= 1",
        });
    }
    let lower = transition_below::<T>(n)?;
    let upper = if n == 1 {
        lit::<T>(ELL_SCAN_MAX)
    } else {
        transition_below::<T>(n - 1)?
    };
    let witness = (lower * upper).sqrt();
    if m_opt(witness)? != n {
        return Err(Error::NodalCountNotFound {
            n,
            lo: ELL_SCAN_MIN,
            hi: ELL_SCAN_MAX,
        });
    }
    Ok(witness)
}
