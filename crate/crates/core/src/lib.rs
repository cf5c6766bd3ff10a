//! Exact verification kernels for the geometry of rank-2 symplectic
//! representations: SL(2,C) moment maps on odd symmetric powers, partial
//! moment maps of 2x2x2 tensors, an exact Dolbeault calculus on the
//! projective line, and the plane geometry of Kummer tropes.
//!
//! All coefficient arithmetic is exact (Gaussian rationals); roots and other
//! algebraic quantities use fixed-point complex arithmetic at an explicit
//! working precision.

pub mod approx;
pub mod binary_forms;
pub mod dolbeault;
pub mod error;
pub mod linalg;
pub mod mpoly;
pub mod poly;
pub mod sampling;
pub mod scalar;
pub mod ternary;
pub mod theta;
pub mod triple;
pub mod trope;

pub use approx::{cross_ratio, cross_ratio_exact, ApproxScalar, P1, DEFAULT_PRECISION_BITS};
pub use error::{CoreError, Result};
pub use mpoly::MPoly;
pub use poly::{discriminant, resultant, roots, UnivariatePoly};
pub use scalar::{Coeff, ExactScalar};
pub use ternary::{interpolate_homogeneous, TernaryForm};
