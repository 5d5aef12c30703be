//! Substring complexity, string attractors and bidirectional macro schemes.

mod attractor;
pub(crate) mod bms;
mod delta;

pub use attractor::{is_attractor, smallest_attractor, smallest_attractor_with_limit, AttractorSet};
pub use bms::{bms_is_valid, check_bms, smallest_bms, smallest_bms_with_limit};
pub use delta::delta;
