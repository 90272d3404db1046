//! Normal structure, subgroup lattices and monolithic-group recognition.

mod lattice;
mod minexp;
mod monolithic;
mod normal;

pub use lattice::{
    frattini, maximal_subgroups, SubgroupClass, SubgroupClassList, SubgroupLattice, LATTICE_JOIN_BUDGET,
    LATTICE_ORDER_CAP,
};
pub use minexp::{
    is_minimal_exponent, minimal_exponent_verdict, tuple_search, two_generated_same_exponent, ExponentVerdict,
    EXPONENT_SEARCH_BUDGET, MINEXP_LATTICE_BUDGET,
};
pub use monolithic::{recognize_monolithic, MonolithicData, MODULE_ORDER_CAP};
pub use normal::{
    derived_series, derived_subgroup, exponent, is_abelian, is_simple, is_soluble, minimal_normal_subgroups,
    normal_closure, socle, NORMAL_SCAN_CAP,
};
