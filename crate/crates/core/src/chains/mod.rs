//! Normalized chains with the Alexander-Whitney coproduct, homology, and
//! the comparison of normalized twisted products with Brown's formula.

mod bridge;
mod complex;
mod normalized;

pub use bridge::{
    brown_right_boundaries, chains_of_twisted_product, degree_one_cochain, BrownCertificate,
};
pub use complex::ChainComplex;
pub(crate) use normalized::add_term;
pub use normalized::{
    alternating_faces, back_face, front_face, normalized_chain_coalgebra, DgCoalgebra,
    NormalizedChains, Tensor3Vec, TensorVec,
};
