use serde::Serialize;

use super::determinant::{det_k, det_k0, det_punctured};
use crate::error::{Error, Result};
use crate::rootfind::smallest_root;
use crate::scalar::{lit, to_f64, Real};
use crate::specfun::bessel_j_zero_value;

/// The annulus `a < |x| < 1`; `a = 0` is the punctured disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Annulus<T> {
    a: T,
}

impl<T: Real> Annulus<T> {
    pub fn new(a: T) -> Result<Self> {
        if a >= T::zero() && a < T::one() {
            Ok(Self { a })
        } else {
            Err(Error::Domain {
                what: "annulus",
                value: to_f64(a),
                expected: "inner radius must lie in [0,1)",
            })
        }
    }

    pub fn inner_radius(&self) -> T {
        self.a
    }

    pub fn is_punctured(&self) -> bool {
        self.a == T::zero()
    }

    /// `pi (1 - a^2)`.
    pub fn area(&self) -> T {
        T::PI() * (T::one() - self.a * self.a)
    }
}

/// Smallest eigenvalue on the branch of angular mode `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchPoint<T> {
    pub k: u32,
    pub a: T,
    pub mu: T,
    pub lambda: T,
}

impl<T: Real> BranchPoint<T> {
    fn new(k: u32, a: T, mu: T) -> Self {
        Self {
            k,
            a,
            mu,
            lambda: mu * mu,
        }
    }
}

/// Start of the determinant scan for branch `k`: 10% below the lower bound
/// `j_{k+1,1}` but never below 0.5.
pub fn scan_start<T: Real>(k: u32) -> Result<T> {
    let lower: T = bessel_j_zero_value(k + 1, 1)?;
    Ok((lit::<T>(0.9) * lower).max(lit(0.5)))
}

/// Scan step `min(0.2, (1 - a)/5)`.
pub fn scan_step<T: Real>(a: T) -> T {
    lit::<T>(0.2).min((T::one() - a) / lit(5.0))
}

/// Determinant whose zeros are the branch-`k` eigenvalues `mu = sqrt(lambda)`
/// on the annulus with inner radius `a > 0`. Evaluation failures map to NaN,
/// which the scanners treat as opaque.
pub fn branch_determinant<T: Real>(k: u32, a: T) -> impl Fn(T) -> T {
    move |mu| {
        let v = if k == 0 { det_k0(a, mu) } else { det_k(k, a, mu) };
        v.unwrap_or_else(|_| T::nan())
    }
}

/// `tau_k(a)`: smallest eigenvalue with angular factor `e^{+-ik theta}`.
///
/// For the punctured disk the `k >= 1` branches coincide with the disk,
/// `mu = j_{k+1,1}`, and the `k = 0` branch is the first nontrivial zero of
/// [`det_punctured`].
pub fn tau<T: Real>(k: u32, a: T, xtol: T) -> Result<BranchPoint<T>> {
    let annulus = Annulus::new(a)?;
    if annulus.is_punctured() {
        if k >= 1 {
            return Ok(BranchPoint::new(k, a, bessel_j_zero_value(k + 1, 1)?));
        }
        let f = |mu: T| det_punctured(mu).unwrap_or_else(|_| T::nan());
        let root = smallest_root(f, lit(0.5), lit(0.2), xtol)?;
        return Ok(BranchPoint::new(0, a, root.root));
    }
    let start = scan_start::<T>(k)?;
    let root = smallest_root(branch_determinant(k, a), start, scan_step(a), xtol)?;
    Ok(BranchPoint::new(k, a, root.root))
}

/// `(j_{k+1,t} / R)^2`, the eigenvalues of the disk of radius `R`.
pub fn disk_eigenvalue<T: Real>(k: u32, t: u32, radius: T) -> Result<T> {
    if !(radius > T::zero()) {
        return Err(Error::Domain {
            what: "disk_eigenvalue",
            value: to_f64(radius),
            expected: "radius R > 0",
        });
    }
    let j: T = bessel_j_zero_value(k + 1, t)?;
    Ok((j / radius).powi(2))
}

/// Outcome of the branch search for `lambda_1` on one annulus.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FirstEigenvalueResult<T> {
    pub a: T,
    pub k_opt: u32,
    pub k_max: u32,
    pub lambda1: T,
    pub sqrt_lambda1: T,
    /// `lambda1 * |annulus|`.
    pub normalized: T,
    /// Every branch evaluated, in order `k = 0, 1, ..., k_max`.
    pub branches: Vec<BranchPoint<T>>,
}

/// Lazily extended list of `j_{k+1,1}`, `k = 0, 1, ...`.
struct FirstZeros<T> {
    values: Vec<T>,
}

impl<T: Real> FirstZeros<T> {
    fn get(&mut self, k: usize) -> Result<T> {
        while self.values.len() <= k {
            let order = self.values.len() as u32 + 1;
            self.values.push(bessel_j_zero_value(order, 1)?);
        }
        Ok(self.values[k])
    }

    /// Smallest `k` with `tau_k(0) = j_{k+1,1}^2 > mu^2`.
    fn cutoff(&mut self, mu: T) -> Result<u32> {
        let mut k = 0;
        while self.get(k)? <= mu {
            k += 1;
        }
        Ok(k as u32)
    }
}

/// `lambda_1` of the annulus by walking the branches:
///
/// 1. `k = 0`, `k_opt = 0`, compute `tau_0(a)`;
/// 2. `k_max` is the smallest index with `tau_{k_max}(0) > tau_{k_opt}(a)`;
/// 3. stop once `k >= k_max`;
/// 4. otherwise increment `k`, compute `tau_k(a)`, adopt it as `k_opt` if it
///    is smaller, and go back to 2.
///
/// Monotonicity of every branch in `a` guarantees no branch beyond `k_max`
/// can undercut the current minimum.
pub fn first_eigenvalue<T: Real>(a: T, xtol: T) -> Result<FirstEigenvalueResult<T>> {
    let annulus = Annulus::new(a)?;
    let mut zeros = FirstZeros { values: Vec::new() };
    let mut branches = vec![tau(0, a, xtol)?];
    let mut k = 0u32;
    let mut k_opt = 0u32;
    let k_max = loop {
        let k_max = zeros.cutoff(branches[k_opt as usize].mu)?;
        if k >= k_max {
            break k_max;
        }
        k += 1;
        let point = tau(k, a, xtol)?;
        if point.lambda < branches[k_opt as usize].lambda {
            k_opt = k;
        }
        branches.push(point);
    };
    let best = branches[k_opt as usize];
    Ok(FirstEigenvalueResult {
        a,
        k_opt,
        k_max,
        lambda1: best.lambda,
        sqrt_lambda1: best.mu,
        normalized: best.lambda * annulus.area(),
        branches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const XTOL: f64 = 1e-12;

    #[test]
    fn annulus_validation_and_area() {
        assert!(Annulus::new(1.0f64).is_err());
        assert!(Annulus::new(-0.1f64).is_err());
        let ann = Annulus::new(0.5f64).unwrap();
        assert!((ann.area() - 0.75 * std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn punctured_branches() {
        let t1 = tau(1, 0.0f64, XTOL).unwrap();
        assert!((t1.mu - 5.135_622_301_840_683).abs() < 1e-12);
        let t0 = tau(0, 0.0f64, XTOL).unwrap();
        assert!((t0.mu - 6.647_816_836_270_43).abs() < 1e-9, "{}", t0.mu);
    }

    #[test]
    fn disk_values_and_scaling() {
        let l = disk_eigenvalue(0, 1, 1.0f64).unwrap();
        assert!((l - 14.681_970_642_123_89).abs() < 1e-10);
        let l2 = disk_eigenvalue(0, 1, 2.0f64).unwrap();
        assert!((l2 - l / 4.0).abs() < 1e-12);
        let l11 = disk_eigenvalue(1, 1, 1.0f64).unwrap();
        assert!((l11 - 26.374_616_427_163_39).abs() < 1e-10);
        assert!(disk_eigenvalue(0, 1, 0.0f64).is_err());
    }

    #[test]
    fn literal_cutoff_at_punctured_disk() {
        let r = first_eigenvalue(0.0f64, XTOL).unwrap();
        assert_eq!(r.k_opt, 1);
        // Equality tau_1(0) = tau_{k_opt}(0) fails the strict test, so k_max = 2.
        assert_eq!(r.k_max, 2);
        assert_eq!(r.branches.len(), 3);
    }
}
