//! Exact multivector calculus on coordinate charts, and the full Poisson
//! cohomology computation for the rotation-covariant "necklace" structures
//! on the two-sphere: Jacobi and Casimir certification, symplectic areas,
//! modular fields, Fourier-mode complexes of the action-angle model, and
//! the Mayer–Vietoris assembly of the global answer.
//!
//! All core computation is exact over the Gaussian rationals; floating
//! point appears only in quadrature (areas, loop periods) and in numeric
//! cross-validation of non-rational chart transitions.

pub mod calculus;
pub mod chart;
pub mod error;
pub mod formal;
pub mod glue;
pub mod linalg;
pub mod multivector;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod scalar;
pub mod structures;

pub use error::{Error, Result};
pub use scalar::Scalar;
