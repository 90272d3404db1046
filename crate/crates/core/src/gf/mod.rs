//! Linear algebra over prime fields, module actions and first cohomology.

mod cohomology;
mod matrix;
mod module;

pub use cohomology::{h1_dimension, H1Dimensions, Presentation};
pub use matrix::GFMatrix;
pub use module::{EndomorphismField, ModuleAction};
