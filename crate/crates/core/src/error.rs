use thiserror::Error;

/// Errors reported by the solvers.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type the
/// failing routine was instantiated with.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} is outside the domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("{what} did not converge within {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("[{lo}, {hi}] is not a bracket: endpoint values must be finite and of opposite sign")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("no root below ceiling: scanned [{lo}, {ceiling}] without a sign change")]
    NoRootBelow { lo: f64, ceiling: f64 },
    #[error("mu = {mu} is not a root of the k = {k} determinant (relative residual {residual:e})")]
    NotARoot { k: u32, mu: f64, residual: f64 },
    #[error("radial sign-change count changed from {coarse} to {fine} when doubling the sampling grid")]
    UnstableSignCount { coarse: usize, fine: usize },
    #[error("could not bracket the minimum of m -> lambda_1m for ell = {ell}")]
    NoMinimumBracket { ell: f64 },
    #[error("no half-height in [{lo}, {hi}] whose first eigenfunction has {n} nodal domains")]
    NodalCountNotFound { n: u32, lo: f64, hi: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
