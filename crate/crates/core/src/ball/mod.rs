//! Vector arithmetic in `C^m`, the unit-ball automorphisms `φ_a` with their
//! differentials, and the Poincaré and Cayley–Klein distances.

pub mod automorphism;
pub mod cvec;
pub mod metric;

pub use automorphism::{pseudo_hyperbolic_quotient, BallAutomorphism};
pub use cvec::{inner, CVec};
pub use metric::{
    cayley_klein_dist, cayley_klein_dist_arcosh, disk_automorphism, poincare_dist,
    pseudo_hyperbolic, MetricPoint,
};
