//! Root systems, their Weyl groups and Weyl chambers.

mod chambers;
mod standard;
mod system;
mod validate;
mod weyl;

pub use chambers::{chamber_containing, chambers_of, dominant_chamber, dominant_point, weyl_chambers, Chamber};
pub use standard::{standard_root_system, Designation, Family};
pub use system::{is_base, RootSystem};
pub use validate::{cartan_integer, validate_root_system, Axiom, AxiomCheck, RootCandidate, ValidationReport, Witness};
pub use weyl::{weyl_group, weyl_group_with_cap, WeylElement, WeylGroup, DEFAULT_WEYL_CAP};

/// The dual root system.
pub fn coroots(r: &RootSystem) -> RootSystem {
    r.coroots()
}
