//! Parameter sweeps over the annulus family: the first-eigenvalue table,
//! branch curves, radial profiles, asymptotic constants and monotonicity
//! audits.
//!
//! Sweeps run on the rayon pool; results always come back in input order.

use rayon::prelude::*;
use serde::Serialize;

use crate::annulus::{disk_eigenvalue, first_eigenvalue, radial_profile, tau, BranchPoint, FirstEigenvalueResult};
use crate::annulus::{RadialProfile, DEFAULT_PROFILE_SAMPLES};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Largest inner radius with accuracy guarantees.
pub const ENVELOPE_MAX: f64 = 0.95;
/// Largest inner radius accepted with [`Envelope::Extended`].
pub const EXTENDED_ENVELOPE_MAX: f64 = 0.995;

/// Inner radii of the reference table.
pub const TABLE_A: [f64; 27] = [
    0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.82, 0.84,
    0.86, 0.88, 0.90, 0.91, 0.92, 0.93, 0.94, 0.95,
];

/// `(k, a)` pairs whose radial profiles are plotted by default.
pub const RADIAL_CASES: [(u32, f64); 9] = [
    (1, 0.2),
    (2, 0.2),
    (3, 0.2),
    (3, 0.5),
    (4, 0.5),
    (5, 0.5),
    (5, 0.8),
    (11, 0.8),
    (13, 0.8),
];

/// Default window for [`fit_asymptotics`].
pub const ASYMPTOTIC_GRID: [f64; 7] = [0.88, 0.90, 0.91, 0.92, 0.93, 0.94, 0.95];

/// Default branch indices for [`branches`].
pub const DEFAULT_BRANCH_K: [u32; 5] = [0, 1, 2, 3, 4];

/// Which inner radii a sweep accepts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Envelope {
    /// `0 <= a <= 0.95`.
    #[default]
    Standard,
    /// `0 <= a <= 0.995`, without accuracy guarantees past 0.95.
    Extended,
}

impl Envelope {
    pub fn max(self) -> f64 {
        match self {
            Envelope::Standard => ENVELOPE_MAX,
            Envelope::Extended => EXTENDED_ENVELOPE_MAX,
        }
    }

    pub fn check<T: Real>(self, a: T) -> Result<()> {
        let x = to_f64(a);
        if (0.0..=self.max()).contains(&x) {
            Ok(())
        } else {
            Err(Error::Domain {
                what: "sweep",
                value: x,
                expected: match self {
                    Envelope::Standard => "inner radius in [0, 0.95] (use the extended envelope up to 0.995)",
                    Envelope::Extended => "inner radius in [0, 0.995]",
                },
            })
        }
    }
}

/// `0, 0.01, ..., 0.40`.
pub fn default_branch_grid<T: Real>() -> Vec<T> {
    (0..=40).map(|i| from_usize::<T>(i) / lit(100.0)).collect()
}

/// One line of the first-eigenvalue table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TableRow<T> {
    pub a: T,
    pub k_max: u32,
    pub k_opt: u32,
    pub sqrt_lambda1: T,
    /// `lambda_1 |annulus|`.
    pub normalized: T,
}

impl<T: Real> From<&FirstEigenvalueResult<T>> for TableRow<T> {
    fn from(r: &FirstEigenvalueResult<T>) -> Self {
        Self {
            a: r.a,
            k_max: r.k_max,
            k_opt: r.k_opt,
            sqrt_lambda1: r.sqrt_lambda1,
            normalized: r.normalized,
        }
    }
}

/// First-eigenvalue table over the standard envelope.
pub fn table1<T: Real>(a_list: &[T], xtol: T) -> Vec<Result<TableRow<T>>> {
    table1_in(a_list, xtol, Envelope::Standard)
}

/// First-eigenvalue table; a failing row does not stop the others.
pub fn table1_in<T: Real>(a_list: &[T], xtol: T, envelope: Envelope) -> Vec<Result<TableRow<T>>> {
    a_list
        .par_iter()
        .map(|&a| {
            envelope.check(a)?;
            first_eigenvalue(a, xtol).map(|r| TableRow::from(&r))
        })
        .collect()
}

/// `tau_k(a)` for every `k` in `k_set` (rows) and `a` in `a_grid` (columns).
pub fn branches<T: Real>(k_set: &[u32], a_grid: &[T], xtol: T) -> Vec<Vec<Result<BranchPoint<T>>>> {
    let cells: Vec<(u32, T)> = k_set
        .iter()
        .flat_map(|&k| a_grid.iter().map(move |&a| (k, a)))
        .collect();
    let mut flat: Vec<Result<BranchPoint<T>>> = cells
        .par_iter()
        .map(|&(k, a)| {
            Envelope::Standard.check(a)?;
            tau(k, a, xtol)
        })
        .collect();
    let width = a_grid.len();
    let mut rows = Vec::with_capacity(k_set.len());
    for _ in 0..k_set.len() {
        let rest = flat.split_off(width.min(flat.len()));
        rows.push(flat);
        flat = rest;
    }
    rows
}

/// Radial profiles of the first root on each `(k, a)` branch, sampled at
/// [`DEFAULT_PROFILE_SAMPLES`] points.
pub fn radial_profiles<T: Real>(cases: &[(u32, T)], xtol: T) -> Result<Vec<RadialProfile<T>>> {
    cases
        .par_iter()
        .map(|&(k, a)| {
            Envelope::Standard.check(a)?;
            radial_profile(k, a, xtol, DEFAULT_PROFILE_SAMPLES)
        })
        .collect()
}

/// Least-squares line `y = intercept + slope (1 - a)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LinearFit<T> {
    pub intercept: T,
    pub slope: T,
    /// Root-mean-square residual of the fit.
    pub residual: T,
    /// Product at the largest `a` of the window.
    pub last_product: T,
    /// `residual > 1% |intercept|`.
    pub poor: bool,
}

fn linear_fit<T: Real>(points: &[(T, T)]) -> Result<LinearFit<T>> {
    if points.len() < 2 {
        return Err(Error::Domain {
            what: "fit_asymptotics",
            value: points.len() as f64,
            expected: "at least two grid points",
        });
    }
    let n = from_usize::<T>(points.len());
    let xs: Vec<T> = points.iter().map(|&(a, _)| T::one() - a).collect();
    let mx = xs.iter().fold(T::zero(), |s, &x| s + x) / n;
    let my = points.iter().fold(T::zero(), |s, &(_, y)| s + y) / n;
    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (x, &(_, y)) in xs.iter().zip(points) {
        sxx += (*x - mx) * (*x - mx);
        sxy += (*x - mx) * (y - my);
    }
    if sxx == T::zero() {
        return Err(Error::Domain {
            what: "fit_asymptotics",
            value: to_f64(mx),
            expected: "at least two distinct grid points",
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sq = xs
        .iter()
        .zip(points)
        .fold(T::zero(), |s, (x, &(_, y))| s + (y - intercept - slope * *x).powi(2));
    let residual = (sq / n).sqrt();
    let last_product = points
        .iter()
        .fold(
            (T::neg_infinity(), T::zero()),
            |best, &(a, y)| if a > best.0 { (a, y) } else { best },
        )
        .1;
    Ok(LinearFit {
        intercept,
        slope,
        residual,
        last_product,
        poor: residual > lit::<T>(0.01) * intercept.abs(),
    })
}

fn monotone<T: Real>(values: &[(T, T)]) -> bool {
    let up = values.windows(2).all(|w| w[1].1 >= w[0].1);
    let down = values.windows(2).all(|w| w[1].1 <= w[0].1);
    up || down
}

/// Evidence for `k_opt(a) ~ c_k / (1 - a)` and `sqrt(lambda_1) ~ c_mu / (1 - a)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticFit<T> {
    /// `(a, k_opt (1 - a))`, sorted by `a`.
    pub c_k_estimates: Vec<(T, T)>,
    /// `(a, sqrt(tau_{k_opt}) (1 - a))`, sorted by `a`.
    pub c_mu_estimates: Vec<(T, T)>,
    /// Extrapolated to `a -> 1`.
    pub c_k: T,
    pub c_mu: T,
    pub c_k_fit: LinearFit<T>,
    pub c_mu_fit: LinearFit<T>,
    pub c_k_monotone: bool,
    pub c_mu_monotone: bool,
    /// Set when an estimate list is not monotone or a fit is poor.
    pub flagged: bool,
}

/// Fits the asymptotic constants on `a_grid` (see [`ASYMPTOTIC_GRID`]).
pub fn fit_asymptotics<T: Real>(a_grid: &[T], xtol: T) -> Result<AsymptoticFit<T>> {
    let mut grid = a_grid.to_vec();
    grid.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let rows = table1(&grid, xtol).into_iter().collect::<Result<Vec<_>>>()?;
    let c_k_estimates: Vec<(T, T)> = rows
        .iter()
        .map(|r| (r.a, from_usize::<T>(r.k_opt as usize) * (T::one() - r.a)))
        .collect();
    let c_mu_estimates: Vec<(T, T)> = rows.iter().map(|r| (r.a, r.sqrt_lambda1 * (T::one() - r.a))).collect();
    let c_k_fit = linear_fit(&c_k_estimates)?;
    let c_mu_fit = linear_fit(&c_mu_estimates)?;
    let c_k_monotone = monotone(&c_k_estimates);
    let c_mu_monotone = monotone(&c_mu_estimates);
    Ok(AsymptoticFit {
        c_k: c_k_fit.intercept,
        c_mu: c_mu_fit.intercept,
        flagged: !c_k_monotone || !c_mu_monotone || c_k_fit.poor || c_mu_fit.poor,
        c_k_estimates,
        c_mu_estimates,
        c_k_fit,
        c_mu_fit,
        c_k_monotone,
        c_mu_monotone,
    })
}

/// First place where a sweep quantity fails to increase strictly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Violation<T> {
    pub quantity: &'static str,
    pub a_before: T,
    pub a_after: T,
    pub before: T,
    pub after: T,
}

/// Result of [`monotonicity_audit`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport<T> {
    /// Rows that could be computed, in grid order.
    pub rows: Vec<TableRow<T>>,
    /// `(a, message)` for rows that failed.
    pub failures: Vec<(T, String)>,
    pub lambda_increasing: bool,
    pub normalized_increasing: bool,
    pub first_violation: Option<Violation<T>>,
    /// `lambda_1` of the unit disk, `j_{1,1}^2`.
    pub disk_lambda1: T,
    /// `lambda_1 |B_1|`.
    pub disk_normalized: T,
    /// The disk is below every row in `lambda_1` (set inclusion).
    pub disk_below_lambda: bool,
    /// The disk is below every row in `lambda_1 |.|`.
    pub disk_below_normalized: bool,
}

impl<T> MonotonicityReport<T> {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.lambda_increasing
            && self.normalized_increasing
            && self.disk_below_lambda
            && self.disk_below_normalized
    }
}

fn first_non_increase<T: Real>(
    rows: &[TableRow<T>],
    quantity: &'static str,
    f: impl Fn(&TableRow<T>) -> T,
) -> Option<Violation<T>> {
    rows.windows(2).find(|w| f(&w[1]) <= f(&w[0])).map(|w| Violation {
        quantity,
        a_before: w[0].a,
        a_after: w[1].a,
        before: f(&w[0]),
        after: f(&w[1]),
    })
}

/// Checks that `lambda_1` and `lambda_1 |annulus|` strictly increase along
/// `a_grid` (taken in the given order) and stay above the unit disk.
pub fn monotonicity_audit<T: Real>(a_grid: &[T], xtol: T) -> MonotonicityReport<T> {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (a, row) in a_grid.iter().zip(table1(a_grid, xtol)) {
        match row {
            Ok(r) => rows.push(r),
            Err(e) => failures.push((*a, e.to_string())),
        }
    }
    let lambda_violation = first_non_increase(&rows, "lambda1", |r| r.sqrt_lambda1);
    let normalized_violation = first_non_increase(&rows, "lambda1_area", |r| r.normalized);
    let first_violation = match (lambda_violation, normalized_violation) {
        (Some(l), Some(n)) => Some(if n.a_after < l.a_after { n } else { l }),
        (l, n) => l.or(n),
    };
    let disk_lambda1 = disk_eigenvalue(0, 1, T::one()).unwrap_or_else(|_| T::nan());
    let disk_normalized = disk_lambda1 * T::PI();
    MonotonicityReport {
        lambda_increasing: lambda_violation.is_none(),
        normalized_increasing: normalized_violation.is_none(),
        first_violation,
        disk_below_lambda: rows.iter().all(|r| disk_lambda1 < r.sqrt_lambda1 * r.sqrt_lambda1),
        disk_below_normalized: rows.iter().all(|r| disk_normalized < r.normalized),
        disk_lambda1,
        disk_normalized,
        rows,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_bounds() {
        assert!(Envelope::Standard.check(0.95f64).is_ok());
        assert!(Envelope::Standard.check(0.96f64).is_err());
        assert!(Envelope::Extended.check(0.99f64).is_ok());
        assert!(Envelope::Extended.check(-0.01f64).is_err());
    }

    #[test]
    fn table_rows_keep_input_order_and_report_failures() {
        let rows = table1(&[0.3f64, 1.5, 0.1], 1e-12);
        assert_eq!(rows.len(), 3);
        assert!(rows[1].is_err());
        let r0 = rows[0].as_ref().unwrap();
        let r2 = rows[2].as_ref().unwrap();
        assert_eq!((r0.a, r0.k_opt), (0.3, 2));
        assert_eq!((r2.a, r2.k_opt), (0.1, 1));
        let area = std::f64::consts::PI * (1.0 - 0.09);
        assert!((r0.normalized / (r0.sqrt_lambda1.powi(2) * area) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn linear_fit_recovers_line() {
        let pts: Vec<(f64, f64)> = [0.1, 0.2, 0.4].iter().map(|&a| (a, 3.0 + 2.0 * (1.0 - a))).collect();
        let fit = linear_fit(&pts).unwrap();
        assert!((fit.intercept - 3.0).abs() < 1e-12);
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!(!fit.poor);
        assert_eq!(fit.last_product, 3.0 + 2.0 * 0.6);
        assert!(linear_fit(&pts[..1]).is_err());
    }

    #[test]
    fn branch_matrix_shape() {
        let rows = branches(&[0, 2], &[0.0f64, 0.1, 0.2], 1e-12);
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.len() == 3));
        let b = rows[1][2].as_ref().unwrap();
        assert_eq!((b.k, b.a), (2, 0.2));
    }
}
