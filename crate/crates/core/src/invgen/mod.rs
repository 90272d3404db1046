//! Generation, invariable generation and coprime invariable generating sets.

mod decide;
mod search;
mod witness;

pub use decide::{
    generates, invariably_generates, DecisionPath, InvgenContext, CLASS_ORBIT_CAP, EXHAUSTIVE_CLOSURE_BUDGET,
    RANDOM_REFUTATION_TRIES,
};
pub use search::{find_cig, find_cig_with, min_generators, random_generating_tuple, CigSearch, MinGenerators, MIN_GENERATORS_CAP};
pub use witness::{pairwise_coprime, Certificate, GenWitness, InvariableVerdict};
