//! Strict tessellation by reflection, and root systems recovered from it.

mod closure;
mod reconstruct;

pub use closure::{
    apply_word, is_strict_tessellation, is_strict_tessellation_default, reflection_closure, Certificate,
    ClosureCopy, ReflectionClosure, Region, StrictnessVerdict, Verdict, DEFAULT_MAX_COPIES,
};
pub use reconstruct::{
    reconstruct_from_planes, root_system_from_tessellation, Reconstruction, WallFrame, WallFrameEntry,
};
