//! Per-check tolerance table.
//!
//! Every numerical threshold used by the verification suites is declared
//! here once. Algebraic identities default to `1e-12`, differential and
//! oracle comparisons to `1e-8`, inequality margins to `1e-10`. The harness
//! may override individual entries by name; unknown names are rejected.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Algebraic identities evaluated in double precision.
pub const IDENTITY: f64 = 1e-12;
/// Finite-difference and singular-value oracle comparisons.
pub const ORACLE: f64 = 1e-8;
/// Signed inequality margins.
pub const MARGIN: f64 = 1e-10;
/// `‖F(ζ)‖ = 1` boundary-contact tolerance.
pub const BOUNDARY_CONTACT: f64 = 1e-10;
/// Step for central finite differences.
pub const FD_STEP: f64 = 1e-5;
/// Boundary grid size used for ball-membership certification.
pub const BOUNDARY_GRID: usize = 4096;
/// Interior grid side used for minimal-surface ball certification.
pub const INTERIOR_GRID: usize = 128;
/// Relative head-room applied when scaling maps into the ball.
pub const SCALE_HEADROOM: f64 = 1e-6;

/// `(name, default)` for every named check.
pub const CHECKS: &[(&str, f64)] = &[
    // ball geometry
    ("phi_norm_identity", IDENTITY),
    ("involution", IDENTITY),
    ("quotient_dominance", IDENTITY),
    ("dphi_finite_difference", ORACLE),
    ("opnorm_anchor", ORACLE),
    ("opnorm_supremum", ORACLE),
    ("poincare_invariance", IDENTITY),
    ("klein_radial", IDENTITY),
    // holomorphic disks
    ("ball_membership", MARGIN),
    ("deriv_finite_difference", ORACLE),
    ("growth", MARGIN),
    ("two_sided", MARGIN),
    ("boundary_origin", MARGIN),
    ("boundary_shifted", MARGIN),
    ("shifted_family", ORACLE),
    ("schwarz_derivative", MARGIN),
    ("julia", MARGIN),
    ("equality", MARGIN),
    ("affine_rigidity", ORACLE),
    // minimal disks
    ("null_condition", IDENTITY),
    ("isothermal", MARGIN),
    ("unit_normal", IDENTITY),
    ("metric_ratio_spread", MARGIN),
    ("primitive_quadrature", MARGIN),
    ("lemma0", MARGIN),
    ("distance_decreasing", MARGIN),
    ("boundary_minimal", MARGIN),
    ("halfsphere_chain", ORACLE),
    ("inverse_lipschitz", ORACLE),
    // sharpness search
    ("search_margin", ORACLE),
    ("search_phase", 1e-4),
    ("search_strictness", 1e-4),
];

/// Default tolerance for a named check.
///
/// Panics on an unknown name: callers inside the crate only use names from
/// [`CHECKS`].
pub fn default_for(name: &str) -> f64 {
    CHECKS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, v)| *v)
        .unwrap_or_else(|| panic!("unknown check name {name:?}"))
}

/// Tolerance table with optional overrides.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tolerances {
    overrides: BTreeMap<String, f64>,
}

impl Tolerances {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_overrides(overrides: BTreeMap<String, f64>) -> Result<Self> {
        let mut table = Self::new();
        for (name, value) in overrides {
            table.set(&name, value)?;
        }
        Ok(table)
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !CHECKS.iter().any(|(n, _)| *n == name) {
            return Err(Error::Config(format!("unknown check {name:?} in tolerance override")));
        }
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Config(format!("tolerance for {name} must be finite and nonnegative")));
        }
        self.overrides.insert(name.to_string(), value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> f64 {
        match self.overrides.get(name) {
            Some(v) => *v,
            None => default_for(name),
        }
    }

    pub fn overrides(&self) -> &BTreeMap<String, f64> {
        &self.overrides
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let mut t = Tolerances::new();
        assert_eq!(t.get("growth"), 1e-10);
        assert_eq!(t.get("involution"), 1e-12);
        t.set("growth", 1e-9).unwrap();
        assert_eq!(t.get("growth"), 1e-9);
        assert!(t.set("no_such_check", 1.0).is_err());
        assert!(t.set("growth", f64::NAN).is_err());
    }

    #[test]
    fn names_are_unique() {
        for (i, (a, _)) in CHECKS.iter().enumerate() {
            for (b, _) in &CHECKS[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }
}
