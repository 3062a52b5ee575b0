//! Construction and classification of transitive Latin squares and sets of
//! mutually orthogonal Latin squares (MOLS) from group packets.
//!
//! A group packet is a group `G` with subgroups `H_1..H_t` that pairwise
//! intersect in a common subgroup `K`, with `[G:H_i] = [H_i:K] = n`. Such
//! data yields an orthogonal array (rows are cosets of `K`, coordinates are
//! coset spaces `G/H_i`) and from it a set of `t - 2` MOLS of order `n`.
//! The crate covers the whole pipeline: permutation-group arithmetic,
//! packet search via clique enumeration in a subgroup-intersection graph,
//! array and square construction, canonical graph certificates for
//! isotopy/main-class equivalence, autotopy groups, and the four-way
//! transitivity classification.

pub mod canon;
pub mod catalog;
pub mod classify;
pub mod enumerate;
pub mod error;
pub mod gf;
pub mod graph;
pub mod group;
pub mod latin;
pub mod mols;
pub mod oa;
pub mod orthomorphism;
pub mod packet;
pub mod perm;

pub use error::{Error, Result};
pub use perm::Perm;

/// Search caps. Operations refuse inputs beyond these rather than degrade.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest group order accepted by subgroup enumeration and Cayley
    /// tables.
    pub max_group_order: usize,
    /// Largest autotopy group (element count) the regular-subgroup search
    /// will enumerate.
    pub max_aut_enumeration: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_group_order: 1000,
            max_aut_enumeration: 1_000_000,
        }
    }
}
