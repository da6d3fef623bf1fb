//! The cobar construction `ΩC`, the bar construction `B(R, ΩC, M)`, twisting
//! cochains and Brown's twisted tensor product.

mod bar;
#[allow(clippy::module_inception)]
mod cobar;
mod poly;

pub use bar::{
    bar_basis, bar_boundary, bar_degree, brown_boundary, homotopy, nilpotency_witness, phi, rho,
    rho_tensor, twisted_complex, BarElement, TwistedElement, WordModule,
};
pub use cobar::{
    cobar_boundary, cobar_words, convolve, generator_boundary, universal_twisting_cochain,
    CobarAlgebra, Cochain, DgAlgebra, DgTwistingCochain,
};
pub use poly::{word_degree, Gen, NCPolynomial, Word};
