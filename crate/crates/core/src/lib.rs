//! Numerical verification of boundary Schwarz lemmas for holomorphic disks in
//! the complex unit ball and conformal minimal disks in the real unit ball.
//!
//! The crate is organised by subsystem:
//!
//! - [`ball`]: `C^m` vectors, ball automorphisms `φ_a`, Poincaré and Cayley–Klein distances.
//! - [`holo`]: holomorphic disks as expression trees and their boundary inequalities.
//! - [`minimal`]: Enneper–Weierstrass minimal disks and their inequalities.
//! - [`search`]: Nelder–Mead sharpness search over parametric families.
//! - [`harness`]: seeded corpora, suite execution and JSON/CSV reporting.

pub mod ball;
pub mod error;
pub mod harness;
pub mod holo;
pub mod minimal;
pub mod poly;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod search;
pub mod tolerance;

pub use error::{Error, Result};
pub use report::InequalityReport;
