//! Derivative-free search for near-equality cases of the boundary bounds.

pub mod families;
pub mod nelder_mead;

pub use families::{
    family_md_disk, margin_objective_1d, margin_objective_md, sharpness_report, Family, FamilySpec, RestartRun,
    SharpnessReport,
};
pub use nelder_mead::{nelder_mead, NelderMeadOptions, NelderMeadResult, SimplexState, StopReason};
