//! Buckling eigenvalues `Δ²u = −λΔu` of clamped plates.
//!
//! * [`specfun`]: Bessel functions `J_n`, `Y_n`, their derivatives and zeros.
//! * [`rootfind`]: bracketing scans and Brent refinement.
//! * [`annulus`]: branches `τ_k(a)` and `λ₁` of the annulus `a < r < 1`,
//!   the punctured disk and the disk, plus radial eigenfunction profiles.
//! * [`rectangle`]: the rectangle clamped on its long edges.
//! * [`analysis`]: parallel sweeps, asymptotic fits and audits.
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the scalar to `f64`.

// NaN must fail these checks, hence `!(x <= y)` rather than `x > y`.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analysis;
pub mod annulus;
mod error;
pub mod linalg;
pub mod rectangle;
pub mod rootfind;
mod scalar;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::{from_usize, lit, Real};

pub type Annulus64 = annulus::Annulus<f64>;
pub type BranchPoint64 = annulus::BranchPoint<f64>;
pub type FirstEigenvalueResult64 = annulus::FirstEigenvalueResult<f64>;
pub type RadialMode64 = annulus::RadialMode<f64>;
pub type RadialProfile64 = annulus::RadialProfile<f64>;
pub type BesselZero64 = specfun::BesselZero<f64>;
pub type RootResult64 = rootfind::RootResult<f64>;
pub type RectMode64 = rectangle::RectMode<f64>;
pub type RectFirstResult64 = rectangle::RectFirstResult<f64>;
pub type RealMinimum64 = rectangle::RealMinimum<f64>;
pub type TableRow64 = analysis::TableRow<f64>;
pub type AsymptoticFit64 = analysis::AsymptoticFit<f64>;
pub type MonotonicityReport64 = analysis::MonotonicityReport<f64>;
