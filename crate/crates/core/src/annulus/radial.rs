//! Radial factor `v(r)` of eigenfunctions `v(r) e^{+-ik theta}`.
//!
//! `k = 0`: `v = A J_0(mu r) + B Y_0(mu r) + C + D ln r`;
//! `k >= 1`: `v = A J_k(mu r) + B Y_k(mu r) + C r^k + D r^-k`.

use log::warn;
use serde::Serialize;

use super::determinant::{det_k0_terms, det_k_terms, det_punctured_terms, matrix_k, matrix_k0, matrix_punctured};
use crate::error::{Error, Result};
use crate::linalg::{null_vector4, Matrix4};
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::specfun::{bessel_j, cylinder_pairs, j_pair};

/// Default number of samples stored in a [`RadialProfile`].
pub const DEFAULT_PROFILE_SAMPLES: usize = 1024;

/// Relative determinant residual accepted as "mu is a root".
const ROOT_RESIDUAL: f64 = 1e-6;

/// Coefficients `(A, B, C, D)` of the radial ansatz, normalized so the largest
/// magnitude is one and `v((a + 1)/2) >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialCoefficients<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    /// Set when elimination met two tiny pivots, i.e. the null space looked
    /// at least two-dimensional (possible double eigenvalue).
    pub degenerate: bool,
}

impl<T: Real> RadialCoefficients<T> {
    pub fn as_array(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    fn from_array(v: [T; 4], degenerate: bool) -> Self {
        Self {
            a: v[0],
            b: v[1],
            c: v[2],
            d: v[3],
            degenerate,
        }
    }
}

/// A radial factor ready for evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialMode<T> {
    pub k: u32,
    pub a: T,
    pub mu: T,
    pub coefficients: RadialCoefficients<T>,
}

/// A [`RadialMode`] plus samples `(r, v(r))` on a uniform grid in `[a, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialProfile<T> {
    pub mode: RadialMode<T>,
    pub samples: Vec<(T, T)>,
}

/// Boundary-condition matrix matching `(k, a)`.
pub fn boundary_matrix<T: Real>(k: u32, a: T, mu: T) -> Result<Matrix4<T>> {
    if a == T::zero() {
        if k == 0 {
            return matrix_punctured(mu);
        }
        return Err(Error::Domain {
            what: "boundary_matrix",
            value: 0.0,
            expected: "the punctured disk has a matrix only for k = 0",
        });
    }
    if k == 0 {
        matrix_k0(a, mu)
    } else {
        matrix_k(k, a, mu)
    }
}

/// `|det| / scale` at `mu` for the determinant matching `(k, a)`.
fn relative_residual<T: Real>(k: u32, a: T, mu: T) -> Result<T> {
    if a == T::zero() && k >= 1 {
        // The branch is J_{k+1}(mu) = 0; compare against the envelope.
        let v: T = bessel_j(k + 1, mu)?;
        return Ok(v.abs() / (lit::<T>(2.0) / (T::PI() * mu)).sqrt());
    }
    let terms = if a == T::zero() {
        det_punctured_terms(mu)?
    } else if k == 0 {
        det_k0_terms(a, mu)?
    } else {
        det_k_terms(k, a, mu)?
    };
    Ok(terms.value().abs() / terms.scale())
}

/// Null vector `(A, B, C, D)` of the boundary matrix at a root `mu`.
///
/// On the punctured disk with `k >= 1` the closed form
/// `v(r) = J_k(mu r) - J_k(mu) r^k` is returned directly.
pub fn radial_coefficients<T: Real>(k: u32, a: T, mu: T) -> Result<RadialCoefficients<T>> {
    if !(a >= T::zero() && a < T::one()) {
        return Err(Error::Domain {
            what: "radial_coefficients",
            value: to_f64(a),
            expected: "inner radius must lie in [0,1)",
        });
    }
    let residual = relative_residual(k, a, mu)?;
    if !(residual <= lit(ROOT_RESIDUAL)) {
        return Err(Error::NotARoot {
            k,
            mu: to_f64(mu),
            residual: to_f64(residual),
        });
    }
    let raw = if a == T::zero() && k >= 1 {
        RadialCoefficients::from_array([T::one(), T::zero(), -bessel_j(k, mu)?, T::zero()], false)
    } else {
        let m = boundary_matrix(k, a, mu)?;
        let nv = null_vector4(&m);
        let degenerate = nv.third_pivot_ratio < T::epsilon().sqrt();
        if degenerate {
            warn!(
                "rank deficiency != 1 at k = {k}, a = {}, mu = {}: possible multiple eigenvalue",
                to_f64(a),
                to_f64(mu)
            );
        }
        RadialCoefficients::from_array(nv.vector, degenerate)
    };
    let scale = raw.as_array().iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    let mut normalized = RadialCoefficients::from_array(raw.as_array().map(|v| v / scale), raw.degenerate);
    let mode = RadialMode {
        k,
        a,
        mu,
        coefficients: normalized,
    };
    let mid = (a + T::one()) / lit(2.0);
    if mode.eval(mid)? < T::zero() {
        normalized = RadialCoefficients::from_array(normalized.as_array().map(|v| -v), normalized.degenerate);
    }
    Ok(normalized)
}

impl<T: Real> RadialMode<T> {
    /// Builds the mode at a root `mu` of the matching determinant.
    pub fn at_root(k: u32, a: T, mu: T) -> Result<Self> {
        Ok(Self {
            k,
            a,
            mu,
            coefficients: radial_coefficients(k, a, mu)?,
        })
    }

    fn check_radius(&self, r: T) -> Result<()> {
        let punctured_log = self.a == T::zero() && self.k == 0 && r == T::zero();
        if r < self.a || r > T::one() || r.is_nan() || punctured_log {
            return Err(Error::Domain {
                what: "radial_eval",
                value: to_f64(r),
                expected: "a <= r <= 1 (r > 0 for the k = 0 punctured profile)",
            });
        }
        Ok(())
    }

    /// `v(r)`.
    pub fn eval(&self, r: T) -> Result<T> {
        self.check_radius(r)?;
        let c = &self.coefficients;
        if r == T::zero() {
            // k >= 1 on the punctured disk: only J_k(mu r) and r^k remain.
            return Ok(T::zero());
        }
        let x = self.mu * r;
        if self.k == 0 {
            let p = cylinder_pairs(0, x)?;
            return Ok(c.a * p.j.this + c.b * p.y.this + c.c + c.d * r.ln());
        }
        let rk = r.powi(self.k as i32);
        if self.a == T::zero() {
            let jk = j_pair(self.k, x)?.this;
            return Ok(c.a * jk + c.c * rk);
        }
        let p = cylinder_pairs(self.k, x)?;
        Ok(c.a * p.j.this + c.b * p.y.this + c.c * rk + c.d / rk)
    }

    /// `v'(r)`.
    pub fn derivative(&self, r: T) -> Result<T> {
        self.check_radius(r)?;
        let c = &self.coefficients;
        let kf = from_usize::<T>(self.k as usize);
        if r == T::zero() {
            return Ok(if self.k == 1 {
                c.a * self.mu / lit(2.0) + c.c
            } else {
                T::zero()
            });
        }
        let x = self.mu * r;
        if self.k == 0 {
            let p = cylinder_pairs(0, x)?;
            return Ok(self.mu * (c.a * p.j.derivative(0, x) + c.b * p.y.derivative(0, x)) + c.d / r);
        }
        let rk = r.powi(self.k as i32);
        let power_part = c.c * kf * rk / r - c.d * kf / (rk * r);
        if self.a == T::zero() {
            let jp = j_pair(self.k, x)?;
            return Ok(self.mu * c.a * jp.derivative(self.k, x) + c.c * kf * rk / r);
        }
        let p = cylinder_pairs(self.k, x)?;
        Ok(self.mu * (c.a * p.j.derivative(self.k, x) + c.b * p.y.derivative(self.k, x)) + power_part)
    }

    /// `v(r)` with the continuous extension `v(0) = A + B (2/pi)(ln(mu/2) + gamma) + C`
    /// for the `k = 0` punctured profile.
    fn eval_or_limit(&self, r: T) -> Result<T> {
        if self.a == T::zero() && self.k == 0 && r == T::zero() {
            let c = &self.coefficients;
            let log_term = (self.mu / lit(2.0)).ln() + T::euler_gamma();
            return Ok(c.a + c.b * lit::<T>(2.0) / T::PI() * log_term + c.c);
        }
        self.eval(r)
    }

    /// Samples on `n >= 2` uniformly spaced radii covering `[a, 1]`.
    pub fn sample(&self, n: usize) -> Result<RadialProfile<T>> {
        let n = n.max(2);
        let h = (T::one() - self.a) / from_usize::<T>(n - 1);
        let samples = (0..n)
            .map(|i| {
                let r = if i == n - 1 {
                    T::one()
                } else {
                    self.a + from_usize::<T>(i) * h
                };
                self.eval_or_limit(r).map(|v| (r, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RadialProfile { mode: *self, samples })
    }

    /// Strict sign changes of `v` over `n` uniform interior radii, skipping a
    /// boundary layer of width `(1 - a)/n` at each end.
    fn sign_changes_on(&self, n: usize) -> Result<usize> {
        let width = T::one() - self.a;
        let layer = width / from_usize::<T>(n);
        let lo = self.a + layer;
        let h = (width - lit::<T>(2.0) * layer) / from_usize::<T>(n - 1);
        let mut changes = 0;
        let mut last_sign: Option<bool> = None;
        for i in 0..n {
            let v = self.eval(lo + from_usize::<T>(i) * h)?;
            if v == T::zero() || !v.is_finite() {
                continue;
            }
            let positive = v > T::zero();
            if let Some(prev) = last_sign {
                if prev != positive {
                    changes += 1;
                }
            }
            last_sign = Some(positive);
        }
        Ok(changes)
    }
}

/// Computes the branch root and samples its radial profile.
pub fn radial_profile<T: Real>(k: u32, a: T, xtol: T, samples: usize) -> Result<RadialProfile<T>> {
    let point = super::tau(k, a, xtol)?;
    RadialMode::at_root(k, a, point.mu)?.sample(samples)
}

/// Pointwise `v(r)` for the mode `(k, a, mu, coefficients)`.
pub fn radial_eval<T: Real>(mode: &RadialMode<T>, r: T) -> Result<T> {
    mode.eval(r)
}

/// Number of interior sign changes of the radial factor, required to be the
/// same on `n_samples` and `2 n_samples` points.
pub fn count_radial_sign_changes<T: Real>(profile: &RadialProfile<T>, n_samples: usize) -> Result<usize> {
    if n_samples < 100 {
        return Err(Error::Domain {
            what: "count_radial_sign_changes",
            value: n_samples as f64,
            expected: "n_samples >= 100",
        });
    }
    let coarse = profile.mode.sign_changes_on(n_samples)?;
    let fine = profile.mode.sign_changes_on(2 * n_samples)?;
    if coarse != fine {
        return Err(Error::UnstableSignCount { coarse, fine });
    }
    Ok(coarse)
}

/// Nodal domains of `v(r) cos(k theta)` when `v` has `s` interior sign changes.
pub fn nodal_domain_count(k: u32, radial_sign_changes: usize) -> usize {
    let rings = radial_sign_changes + 1;
    if k == 0 {
        rings
    } else {
        2 * k as usize * rings
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_j_zero_value;

    #[test]
    fn nodal_counts() {
        assert_eq!(nodal_domain_count(1, 0), 2);
        assert_eq!(nodal_domain_count(0, 0), 1);
        assert_eq!(nodal_domain_count(4, 0), 8);
        assert_eq!(nodal_domain_count(2, 1), 8);
    }

    #[test]
    fn punctured_k1_closed_form() {
        let mu: f64 = bessel_j_zero_value(2, 1).unwrap();
        let mode = RadialMode::at_root(1, 0.0, mu).unwrap();
        let c = mode.coefficients;
        let j1 = bessel_j(1, mu).unwrap();
        assert_eq!((c.b, c.d), (0.0, 0.0));
        assert!((c.c / c.a + j1).abs() < 1e-15);
        let direct = bessel_j(1, mu * 0.5).unwrap() - j1 * 0.5;
        let v = mode.eval(0.5).unwrap();
        assert!(direct > 0.0);
        assert!((v - direct / c.a.abs()).abs() < 1e-14);
        assert!(mode.eval(1.0).unwrap().abs() < 1e-14);
        assert!(mode.derivative(1.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rejects_non_roots() {
        assert!(matches!(
            radial_coefficients(2, 0.2f64, 7.0),
            Err(Error::NotARoot { .. })
        ));
    }

    #[test]
    fn radius_domain() {
        let mu: f64 = bessel_j_zero_value(2, 1).unwrap();
        let mode = RadialMode::at_root(1, 0.0, mu).unwrap();
        assert!(mode.eval(1.5).is_err());
        assert!(mode.eval(-0.1).is_err());
    }

    #[test]
    fn sample_count_guard() {
        let profile = radial_profile(1, 0.0f64, 1e-12, 64).unwrap();
        assert_eq!(profile.samples.len(), 64);
        assert!(count_radial_sign_changes(&profile, 50).is_err());
        assert_eq!(count_radial_sign_changes(&profile, 200).unwrap(), 0);
    }
}
