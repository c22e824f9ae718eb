//! Exact linear algebra over small prime fields.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, Fq};
pub use matrix::FqMatrix;
pub use subspace::{gaussian_binomial, projective_points, subspaces_containing, Subspace, SubspaceIter};
