//! Permutations, stabilizer chains and permutation groups.

mod chain;
mod group;
mod hom;
mod permutation;

pub use chain::StabChain;
pub use group::{build_group, PermGroup, MAX_ORDER};
pub use hom::Homomorphism;
pub use permutation::{Permutation, MAX_DEGREE};
