//! Exact cobar constructions, fundamental bialgebras and universal covers of
//! simplicial cocommutative coalgebras over `Z`, `Q` and `F_p`.

pub mod chains;
pub mod cli;
pub mod cobar;
pub mod exactalg;
pub mod pi1;
pub mod scoalg;
pub mod sset;

/// Errors raised by the computations in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("ring mismatch: {0}")]
    Ring(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("invalid twisting data: {0}")]
    InvalidTwisting(String),
    #[error("rewriting failed: {0}")]
    Rewriting(String),
    #[error("step budget exhausted after {0} steps")]
    Budget(usize),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/simplicial-sets.md")]
    mod simplicial_sets {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/cobar.md")]
    mod cobar {}
    #[doc = include_str!("../../../book/src/fundamental-bialgebra.md")]
    mod fundamental_bialgebra {}
    #[doc = include_str!("../../../book/src/covers.md")]
    mod covers {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
