//! Exact scalars, sparse matrices, Smith normal form and homology.

mod homology;
mod matrix;
mod scalar;
mod snf;

pub use homology::{homology_at, HomologyGroup};
pub use matrix::{vec_add_term, vec_axpy, SparseMatrix, Vector};
pub use scalar::{Ring, Scalar};
pub use snf::{rank, smith_normal_form, SmithForm};
