//! Exact computer algebra for Casoratian and Wronskian determinants of
//! classical orthogonal polynomial families (Charlier, Meixner, Hahn, dual
//! Hahn, Hermite, Laguerre, Jacobi), together with the Christoffel-transform
//! machinery built on top of them.
//!
//! All arithmetic is exact over the Gaussian rationals `Q(i)`; no floating
//! point is used anywhere. Determinants of polynomial matrices are computed
//! by evaluation at integer nodes, fraction-free elimination on the scalar
//! matrices, and Newton interpolation back to coefficient form.

#![forbid(unsafe_code)]

pub mod builders;
pub mod christoffel;
pub mod error;
pub mod families;
pub mod limits;
pub mod matrix;
pub mod measures;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod sets;
pub mod verify;

pub use error::Error;
pub use poly::Polynomial;
pub use scalar::{GaussianRational, Rational};
pub use sets::{FiniteSet, SetTuple};
