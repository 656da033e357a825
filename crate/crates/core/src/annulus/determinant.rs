//! Boundary-condition matrices of the radial ansatz and their closed-form
//! determinants.
//!
//! Matrix rows are ordered (value at 1, derivative at 1, value at a,
//! derivative at a); columns multiply `(A, B, C, D)`.

use crate::error::{Error, Result};
use crate::linalg::Matrix4;
use crate::scalar::{from_usize, lit, to_f64, Real};
use crate::specfun::{cylinder_pairs, CylinderPairs};

/// The four additive terms of a closed-form determinant.
///
/// The determinant is their sum; the largest magnitude is the natural scale
/// for judging how close to zero the sum is.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeterminantTerms<T> {
    pub terms: [T; 4],
}

impl<T: Real> DeterminantTerms<T> {
    pub fn value(&self) -> T {
        self.terms.iter().fold(T::zero(), |acc, t| acc + *t)
    }

    pub fn scale(&self) -> T {
        self.terms.iter().fold(T::zero(), |acc, t| acc.max(t.abs()))
    }
}

pub(crate) fn check_inner_radius<T: Real>(a: T, what: &'static str) -> Result<()> {
    if a > T::zero() && a < T::one() {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: to_f64(a),
            expected: "inner radius 0 < a < 1",
        })
    }
}

pub(crate) fn check_mu<T: Real>(mu: T, what: &'static str) -> Result<()> {
    if mu > T::zero() && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: to_f64(mu),
            expected: "mu > 0",
        })
    }
}

fn check_mode(k: u32, what: &'static str) -> Result<()> {
    if k >= 1 {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: 0.0,
            expected: "mode index k >= 1",
        })
    }
}

fn powers<T: Real>(k: u32, a: T) -> Result<(T, T)> {
    let ak = a.powi(k as i32);
    let inv = T::one() / ak;
    if !inv.is_finite() || ak == T::zero() {
        return Err(Error::Domain {
            what: "det_k",
            value: to_f64(a),
            expected: "a^-k representable in floating point",
        });
    }
    Ok((ak, inv))
}

/// Terms of the `k = 0` determinant on the annulus `a < r < 1`.
pub fn det_k0_terms<T: Real>(a: T, mu: T) -> Result<DeterminantTerms<T>> {
    check_inner_radius(a, "det_k0")?;
    check_mu(mu, "det_k0")?;
    let outer = cylinder_pairs(1, mu)?;
    let inner = cylinder_pairs(1, mu * a)?;
    // prev = order 0, this = order 1
    let (j0, j1, y0, y1) = (outer.j.prev, outer.j.this, outer.y.prev, outer.y.this);
    let (j0a, j1a, y0a, y1a) = (inner.j.prev, inner.j.this, inner.y.prev, inner.y.this);
    let pi = T::PI();
    Ok(DeterminantTerms {
        terms: [
            lit::<T>(4.0) / (pi * a),
            mu * (j0 * y1a - j1a * y0),
            -mu * mu * a.ln() * (j1 * y1a - j1a * y1),
            mu / a * (j0a * y1 - j1 * y0a),
        ],
    })
}

/// Closed-form determinant of [`matrix_k0`].
pub fn det_k0<T: Real>(a: T, mu: T) -> Result<T> {
    det_k0_terms(a, mu).map(|t| t.value())
}

/// Terms of the `k >= 1` determinant on the annulus `a < r < 1`.
pub fn det_k_terms<T: Real>(k: u32, a: T, mu: T) -> Result<DeterminantTerms<T>> {
    check_mode(k, "det_k")?;
    check_inner_radius(a, "det_k")?;
    check_mu(mu, "det_k")?;
    let (ak, inv_ak) = powers(k, a)?;
    let outer = cylinder_pairs(k, mu)?;
    let inner = cylinder_pairs(k, mu * a)?;
    let (jm, jk, ym, yk) = (outer.j.prev, outer.j.this, outer.y.prev, outer.y.this);
    let (jma, jka, yma, yka) = (inner.j.prev, inner.j.this, inner.y.prev, inner.y.this);
    let kf = from_usize::<T>(k as usize);
    let two = lit::<T>(2.0);
    Ok(DeterminantTerms {
        terms: [
            mu * mu * (ak - inv_ak) * (jm * yma - jma * ym),
            -lit::<T>(8.0) * kf / (T::PI() * a),
            two * kf * mu * (ak / a) * (jka * ym - jm * yka),
            two * kf * mu * inv_ak * (jk * yma - jma * yk),
        ],
    })
}

/// Closed-form determinant of [`matrix_k`].
pub fn det_k<T: Real>(k: u32, a: T, mu: T) -> Result<T> {
    det_k_terms(k, a, mu).map(|t| t.value())
}

/// Terms of the `k = 0` determinant on the punctured disk.
pub fn det_punctured_terms<T: Real>(mu: T) -> Result<DeterminantTerms<T>> {
    check_mu(mu, "det_punctured")?;
    let p = cylinder_pairs(1, mu)?;
    let (j0, j1, y1) = (p.j.prev, p.j.this, p.y.this);
    let two_over_pi = lit::<T>(2.0) / T::PI();
    let log_term = (mu / lit(2.0)).ln() + T::euler_gamma();
    Ok(DeterminantTerms {
        terms: [
            two_over_pi * (j0 - lit(2.0)),
            two_over_pi * mu * j1 * log_term,
            -mu * y1,
            T::zero(),
        ],
    })
}

/// `k = 0` punctured-disk determinant. It equals `-det(matrix_punctured)`;
/// only its zeros matter.
pub fn det_punctured<T: Real>(mu: T) -> Result<T> {
    det_punctured_terms(mu).map(|t| t.value())
}

fn bessel_rows<T: Real>(k: u32, mu: T, p: &CylinderPairs<T>, x: T) -> ([T; 2], [T; 2]) {
    let values = [p.j.this, p.y.this];
    let derivs = [mu * p.j.derivative(k, x), mu * p.y.derivative(k, x)];
    (values, derivs)
}

/// Boundary-condition matrix for `k = 0` on the annulus.
pub fn matrix_k0<T: Real>(a: T, mu: T) -> Result<Matrix4<T>> {
    check_inner_radius(a, "matrix_k0")?;
    check_mu(mu, "matrix_k0")?;
    let (v1, d1) = bessel_rows(0, mu, &cylinder_pairs(0, mu)?, mu);
    let (va, da) = bessel_rows(0, mu, &cylinder_pairs(0, mu * a)?, mu * a);
    let (zero, one) = (T::zero(), T::one());
    Ok([
        [v1[0], v1[1], one, zero],
        [d1[0], d1[1], zero, one],
        [va[0], va[1], one, a.ln()],
        [da[0], da[1], zero, one / a],
    ])
}

/// Boundary-condition matrix for `k >= 1` on the annulus.
pub fn matrix_k<T: Real>(k: u32, a: T, mu: T) -> Result<Matrix4<T>> {
    check_mode(k, "matrix_k")?;
    check_inner_radius(a, "matrix_k")?;
    check_mu(mu, "matrix_k")?;
    let (ak, inv_ak) = powers(k, a)?;
    let kf = from_usize::<T>(k as usize);
    let (v1, d1) = bessel_rows(k, mu, &cylinder_pairs(k, mu)?, mu);
    let (va, da) = bessel_rows(k, mu, &cylinder_pairs(k, mu * a)?, mu * a);
    let one = T::one();
    Ok([
        [v1[0], v1[1], one, one],
        [d1[0], d1[1], kf, -kf],
        [va[0], va[1], ak, inv_ak],
        [da[0], da[1], kf * ak / a, -kf * inv_ak / a],
    ])
}

/// Boundary-condition matrix for `k = 0` on the punctured disk, where the
/// inner conditions become boundedness of `v'` and `v(0) = 0`.
pub fn matrix_punctured<T: Real>(mu: T) -> Result<Matrix4<T>> {
    check_mu(mu, "matrix_punctured")?;
    let (v1, d1) = bessel_rows(0, mu, &cylinder_pairs(0, mu)?, mu);
    let two_over_pi = lit::<T>(2.0) / T::PI();
    let log_term = (mu / lit(2.0)).ln() + T::euler_gamma();
    let (zero, one) = (T::zero(), T::one());
    Ok([
        [v1[0], v1[1], one, zero],
        [d1[0], d1[1], zero, one],
        [one, two_over_pi * log_term, one, zero],
        [zero, two_over_pi, zero, one],
    ])
}
