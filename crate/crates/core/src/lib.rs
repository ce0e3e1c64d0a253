//! Thin and slim set systems, phylogenetic flexibility, BUILD supertrees,
//! caterpillar median representations and total-order flexibility.
//!
//! A set system `τ` over taxa `X` is *thin* (all members of size `r`) when
//! every non-empty subfamily `τ′` covers at least `|τ′| + r - 1` taxa, and
//! *slim* (members of size at least 3) when it covers at least
//! `2 + Σ(|s| - 2)`. Both are decided exactly in polynomial time by
//! minimizing a submodular surplus with max-flow ([`graphopt`]); brute-force
//! oracles for the equivalent flexibility notions live in [`flex`].

pub mod error;
pub mod flex;
pub mod graphopt;
pub mod phylo;
pub mod report;
pub mod represent;
pub mod setsys;
pub mod taxa;

pub use error::{Error, Result};
pub use report::{Certificate, CheckReport, Method, Stats};
pub use setsys::{SetSystem, SubsetSelection};
pub use taxa::{TaxonId, Universe};
