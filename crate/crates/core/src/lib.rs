//! Exact harmonic analysis on the Heisenberg group: polynomial-times-Gaussian algebra,
//! Weyl transforms on truncated Fock spaces, and spherical functions for U(n) and U(n₁)×U(n₂).

pub mod error;
pub mod gausspoly;
pub mod json;
pub mod laguerre;
pub mod linalg;
pub mod scalar;
pub mod spherical;
pub mod weylfock;

pub use error::{max_degree, HhError, Result};
pub use gausspoly::{GaussPoly, Monomial, MultiIndex, WeylContext};
pub use scalar::PiScalar;
