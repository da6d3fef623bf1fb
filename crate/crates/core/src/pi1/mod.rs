//! Fundamental bialgebras, group-like elements and universal covers.

mod bialgebra;
mod fundamental;
mod grouplike;
mod nabla;
mod oracle;
mod presentation;
mod rewriting;

pub use bialgebra::{BialgebraSummary, FiniteBialgebra};
pub use fundamental::{
    fundamental_bialgebra, fundamental_twisting_cochain, induced_map, local_homology,
    universal_cover, FundamentalBialgebra, FundamentalSummary, InducedMap, LocalSystem,
    UniversalCover, MAX_BASIS_LENGTH,
};
pub use grouplike::{
    enumerate_group_likes, is_group_like, GroupLikeSet, GroupLikeSummary, MAX_GROUP_LIKE_CANDIDATES,
};
pub use nabla::{
    nabla0, nabla0_violations, nabla1, nabla1_chain_check, tensor_differential, tensor_mul,
    tensor_of, tensor_reduce, tensor_swap, tensor_unit, NablaResidual, PolyTensor, PolyTensor3,
};
pub use oracle::{monoid_oracle_compare, monoid_presentation, MonoidComparison};
pub use presentation::{fundamental_presentation, AlgebraPresentation, CobarContext};
pub use rewriting::{
    complete_rewriting, leading_term, word_order, RewritingSummary, RewritingSystem, Rule,
    DEFAULT_REWRITE_STEPS,
};
