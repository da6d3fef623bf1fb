//! Simplicial cocommutative coalgebras, simplicial twisting cochains and
//! simplicial twisted tensor products.

mod algebra;
mod coalgebra;
mod cochain;
mod tensor;

pub use algebra::SimplicialBialgebra;
pub use coalgebra::{free_coalgebra, induced_map, SimplicialCoalgebra};
pub use cochain::{linearize_twisting_morphism, CochainViolation, SimplicialTwistingCochain};
pub use tensor::{
    compare_with_twisted_cartesian, right_action, simplicial_twisted_tensor, CartesianComparison,
    TwistedTensor,
};
