//! Exact integer linear algebra.

mod matrix;
mod snf;
mod symplectic;

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
pub use symplectic::{is_symplectic, pairing, HomologyVector, SymplecticForm};
