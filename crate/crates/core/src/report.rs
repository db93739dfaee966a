use serde::{Deserialize, Serialize};

/// Outcome of checking one inequality on one instance.
///
/// `margin` is signed so that a nonnegative value means the inequality holds
/// as stated; `pass` is exactly `margin >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl InequalityReport {
    pub fn new(
        name: impl Into<String>,
        instance: impl Into<String>,
        lhs: f64,
        rhs: f64,
        margin: f64,
        tolerance: f64,
    ) -> Self {
        InequalityReport {
            name: name.into(),
            instance: instance.into(),
            lhs,
            rhs,
            margin,
            tolerance,
            pass: margin >= -tolerance,
        }
    }

    /// `lhs ≤ rhs`, margin `rhs − lhs`.
    pub fn at_most(name: impl Into<String>, instance: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, instance, lhs, rhs, rhs - lhs, tolerance)
    }

    /// `lhs ≥ rhs`, margin `lhs − rhs`.
    pub fn at_least(name: impl Into<String>, instance: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, instance, lhs, rhs, lhs - rhs, tolerance)
    }

    /// `lhs = rhs`, margin `−|lhs − rhs|`.
    pub fn equality(name: impl Into<String>, instance: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(name, instance, lhs, rhs, -(lhs - rhs).abs(), tolerance)
    }

    /// Same report with a different tolerance (pass flag recomputed).
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.margin >= -tolerance;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_margin_above_minus_tolerance() {
        let r = InequalityReport::at_most("x", "", 1.0 + 1e-11, 1.0, 1e-10);
        assert!(r.pass);
        assert!((r.margin + 1e-11).abs() < 1e-16);
        let r = InequalityReport::at_least("x", "", 1.0, 1.0 + 1e-9, 1e-10);
        assert!(!r.pass);
        let r = InequalityReport::equality("x", "", 2.0, 2.0 + 1e-12, 1e-10);
        assert!(r.pass && r.margin <= 0.0);
        let r = InequalityReport::at_most("x", "", f64::NAN, 1.0, 1e-10);
        assert!(!r.pass);
    }
}
