//! Buckling eigenvalues of the clamped annulus `a < r < 1`, the punctured
//! disk (`a = 0`) and the disk.

mod branch;
mod determinant;
mod radial;

pub use branch::{
    branch_determinant, disk_eigenvalue, first_eigenvalue, scan_start, scan_step, tau, Annulus, BranchPoint,
    FirstEigenvalueResult,
};
pub use determinant::{
    det_k, det_k0, det_k0_terms, det_k_terms, det_punctured, det_punctured_terms, matrix_k, matrix_k0,
    matrix_punctured, DeterminantTerms,
};
pub use radial::{
    boundary_matrix, count_radial_sign_changes, nodal_domain_count, radial_coefficients, radial_eval, radial_profile,
    RadialCoefficients, RadialMode, RadialProfile, DEFAULT_PROFILE_SAMPLES,
};
