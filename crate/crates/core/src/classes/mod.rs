//! Conjugacy classes, centralizers and π-element counts.

mod centralizer;
mod pi;
mod primeset;
mod table;

pub use centralizer::{centralizer, find_conjugator, CENTRALIZER_ORBIT_CAP};
pub use pi::{a_pi, k_pi, max_partition_product, PartitionProduct, A_PI_INDEX_CAP, A_PI_ORDER_CAP};
pub use primeset::{pi_part, PrimeSet};
pub use table::{conjugacy_classes, ClassTable, ConjClass, CLASS_TABLE_CAP};
