//! Finite permutation-group toolkit for invariable generation.
//!
//! The crate decides and searches for (coprime) invariable generating sets,
//! counts conjugacy classes of `π`-elements, computes first cohomology of
//! prime-field modules, builds crown-based powers of monolithic groups and
//! audits the arithmetic inequalities that bound class counts of finite simple
//! groups. Every computed claim can be replayed through [`suite`] over the
//! bundled [`catalog`] of small groups.

pub mod arith;
pub mod cache;
pub mod catalog;
pub mod classes;
pub mod crowns;
pub mod error;
pub mod gf;
pub mod invgen;
pub mod perm;
pub mod report;
pub mod structure;
pub mod suite;

pub use error::{Error, Result};
pub use catalog::{default_catalog, load_catalog, Catalog};
pub use classes::{conjugacy_classes, ClassTable, ConjClass, PrimeSet};
pub use invgen::{CigSearch, GenWitness, InvariableVerdict};
pub use perm::{build_group, Homomorphism, PermGroup, Permutation, StabChain};
pub use report::{Status, Verdict};
pub use suite::{run_suite, SuiteOptions, SuiteReport};
