//! Truncated simplicial sets, nerves of finite groups, twisting morphisms
//! and twisted Cartesian products.

mod build;
mod group;
mod map;
mod set;
mod simplex;
mod twisting;

pub use build::{
    minimal_circle, nerve_of_group, nerve_with_layout, point, wedge_of_circles, NerveLayout,
};
pub use group::FiniteGroup;
pub use map::SimplicialMap;
pub use set::TruncatedSimplicialSet;
pub use simplex::{CellId, SimplexRef};
pub use twisting::{
    front_edge, twisted_cartesian_product, TwistedCartesianProduct, TwistingMorphism,
    TwistingViolation,
};
