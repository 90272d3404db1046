//! Crown-based powers of monolithic groups and the bounds checked on them.

mod params;
mod pla;
mod power;
mod verify;

pub use params::{
    count_complements_by_lifting, crown_params, d_crown_abelian, quotient_generator_number, socle_cohomology,
    CrownParams, COMPLEMENT_SEARCH_CAP,
};
pub use pla::{estimate_pla, exact_pla, PlaEstimate, EXACT_PLA_CAP};
pub use power::{crown_power, CrownSpec, CROWN_ORDER_CAP};
pub use verify::{verify_abcase, verify_t_bound};
