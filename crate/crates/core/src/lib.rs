//! Exact coloring-counting of S-labeled graphs.
//!
//! An S-labeling equips each oriented edge of a multigraph with a tuple of
//! color permutations; a proper coloring avoids pi(kappa(u)) = kappa(v) on
//! every component. Minimizing the number of proper colorings over labeling
//! families yields the DP color function (all permutations), the linear
//! color function (x -> ax + b over GF(k)) and the signed chromatic function
//! ({identity, negation}). This crate computes those functions exactly by
//! pruned enumeration, builds the finite-field covering polynomials whose
//! nonzeros are proper colorings, evaluates the resulting lower bounds on
//! sparse graphs, and replicates the associated minimal-degree searches.

pub mod bounds;
pub mod counting;
pub mod covering;
pub mod degree_search;
pub mod error;
pub mod field;
pub mod graph;
pub mod labeling;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use graph::{Multigraph, Orientation, SpanningTree};
pub use labeling::{Permutation, SLabeling, SignedGraph};
