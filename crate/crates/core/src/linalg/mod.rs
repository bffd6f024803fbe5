//! Exact linear algebra over prime fields.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::Fp;
pub use matrix::{Matrix, Rref};
pub use subspace::{subquotient, subquotient_dim, Subquotient, Subspace};
