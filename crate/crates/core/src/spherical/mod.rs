//! Spherical harmonics, spherical functions and the Hecke–Bochner identity for
//! K = U(n) and K = U(n₁)×U(n₂).

mod functions;
mod harmonic;
mod hecke;
mod kernels;

pub use functions::{
    a_by_radial, closed_form_a, closed_form_l, eigenvalues, generalized_spherical, generators,
    is_joint_eigenfunction, laguerre_radial, psi, GeneralizedSpherical, SphericalFunction,
};
pub use harmonic::{
    check_invariant, component_project, decompose_block, express, harmonic_basis, harmonic_decompose,
    invariant_monomial, isotypic_types, HarmonicSpace,
};
pub use hecke::{
    eigenfunction_from_operator, equivariance_matrix, geller_coefficient, hecke_bochner, operator_span_rank,
    weighted_norm_sq, weyl_correspondence_on, HeckeBochnerCoeff,
};
pub use kernels::*;
