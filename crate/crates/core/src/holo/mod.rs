//! Holomorphic maps of the disk into the ball, given as expression trees with
//! exact derivatives, and the boundary Schwarz-type inequalities they satisfy.

pub mod bounds;
pub mod disk;
pub mod families;
pub mod notation;
pub mod radial;

pub use bounds::{
    affine_rigidity_check, boundary_bound_origin, boundary_bound_shifted, growth_margin, julia_margin,
    schwarz_derivative_bound, two_sided_quotient_check, OriginData, ShiftedReport, TwoSidedReport,
};
pub use disk::{affine_disk, blaschke_product, z_squared, z_times_blaschke, BoundaryPoint, Expr, HoloDisk};
pub use families::{blaschke_product_fixing_one, extremal_family_1d, nonreal_parameter_strictness, rotated_extremal};
pub use radial::{default_schedule, radial_derivative_estimate, radial_derivative_exact, RadialEstimate};
