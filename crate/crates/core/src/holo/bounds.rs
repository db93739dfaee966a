//! Margins for the holomorphic-disk inequalities.
//!
//! Every check has a `*_terms` form returning the two sides as plain numbers,
//! used by bulk sweeps, and a report form that wraps them in an
//! [`InequalityReport`] with the default tolerance for that check.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::disk::{BoundaryPoint, HoloDisk};
use crate::ball::cvec::gram_defect;
use crate::ball::CVec;
use crate::error::{Error, Result};
use crate::report::InequalityReport;
use crate::tolerance::{self, default_for};

/// `F(0)` and `‖F'(0)‖`, shared by most bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct OriginData {
    pub value: CVec,
    pub derivative: CVec,
}

impl OriginData {
    pub fn of(disk: &HoloDisk) -> Result<Self> {
        let (value, derivative) = disk.eval_with_derivative(Complex64::new(0.0, 0.0))?;
        Ok(OriginData { value, derivative })
    }

    pub fn deriv_norm(&self) -> f64 {
        self.derivative.norm()
    }

    pub fn fixes_origin(&self) -> bool {
        self.value.norm() <= tolerance::IDENTITY
    }

    fn require_fixed_origin(&self) -> Result<()> {
        if !self.fixes_origin() {
            return Err(Error::Precondition(format!("F(0) = 0 required, ‖F(0)‖ = {:e}", self.value.norm())));
        }
        Ok(())
    }
}

fn describe(disk: &HoloDisk, z: Complex64) -> String {
    format!("F={disk}; z={}", super::notation::format_complex(z))
}

fn require_contact(disk: &HoloDisk, zeta: &BoundaryPoint) -> Result<CVec> {
    let (value, derivative) = disk.eval_with_derivative(zeta.zeta())?;
    let n = value.norm();
    if (n - 1.0).abs() > tolerance::BOUNDARY_CONTACT {
        return Err(Error::Precondition(format!("‖F(ζ)‖ = 1 required, got {n}")));
    }
    Ok(derivative)
}

/// `(‖F(z)‖, |z|(|z| + A)/(1 + |z|A))` for a map with `F(0) = 0` and `A = ‖F'(0)‖`.
pub fn growth_terms(disk: &HoloDisk, deriv_norm: f64, z: Complex64) -> Result<(f64, f64)> {
    let rho = z.norm();
    if !(rho < 1.0) {
        return Err(Error::NotInterior(rho));
    }
    let value = disk.eval(z)?.norm();
    let bound = rho * (rho + deriv_norm) / (1.0 + rho * deriv_norm);
    Ok((value, bound))
}

/// Growth bound `‖F(z)‖ ≤ |z|(|z| + ‖F'(0)‖)/(1 + |z|‖F'(0)‖)` for `F(0) = 0`.
pub fn growth_margin(disk: &HoloDisk, z: Complex64) -> Result<InequalityReport> {
    let origin = OriginData::of(disk)?;
    origin.require_fixed_origin()?;
    let (lhs, rhs) = growth_terms(disk, origin.deriv_norm(), z)?;
    Ok(InequalityReport::at_most("growth", describe(disk, z), lhs, rhs, default_for("growth")))
}

/// Both sides of `(A − |z|)/(1 − A|z|) ≤ ‖F(z)/z‖ ≤ (A + |z|)/(1 + A|z|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSidedReport {
    pub upper: InequalityReport,
    /// Lower root clamped at 0.
    pub lower: InequalityReport,
    /// Whether the lower bound is part of the asserted contract for this
    /// instance (`m = 1`, `F'(0) = 0`, or `F(z)/z` parallel to `F'(0)`).
    pub lower_asserted: bool,
}

impl TwoSidedReport {
    pub fn pass(&self) -> bool {
        self.upper.pass && (!self.lower_asserted || self.lower.pass)
    }
}

pub fn two_sided_quotient_check(disk: &HoloDisk, z: Complex64) -> Result<TwoSidedReport> {
    let origin = OriginData::of(disk)?;
    origin.require_fixed_origin()?;
    let rho = z.norm();
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::Precondition(format!("0 < |z| < 1 required, got {rho}")));
    }
    let quotient = disk.eval(z)?.scale(z.inv());
    let x = quotient.norm();
    let a = origin.deriv_norm();
    let upper_root = (a + rho) / (1.0 + a * rho);
    let lower_root = ((a - rho) / (1.0 - a * rho)).max(0.0);
    let tol = default_for("two_sided");
    let instance = describe(disk, z);
    let parallel = gram_defect(&origin.derivative, &quotient)
        <= 1e-24 * origin.derivative.norm_sqr() * quotient.norm_sqr();
    Ok(TwoSidedReport {
        upper: InequalityReport::at_most("two_sided_upper", instance.clone(), x, upper_root, tol),
        lower: InequalityReport::at_least("two_sided_lower", instance, x, lower_root, tol),
        lower_asserted: disk.dim() == 1 || a == 0.0 || parallel,
    })
}

/// `(‖F'(ζ)‖, 2/(1 + ‖F'(0)‖))`.
pub fn boundary_origin_terms(disk: &HoloDisk, deriv_norm: f64, zeta: &BoundaryPoint) -> Result<(f64, f64)> {
    let d = require_contact(disk, zeta)?;
    Ok((d.norm(), 2.0 / (1.0 + deriv_norm)))
}

/// Boundary bound `‖F'(ζ)‖ ≥ 2/(1 + ‖F'(0)‖)` for `F(0) = 0`, `‖F(ζ)‖ = 1`.
pub fn boundary_bound_origin(disk: &HoloDisk, zeta: &BoundaryPoint) -> Result<InequalityReport> {
    let origin = OriginData::of(disk)?;
    origin.require_fixed_origin()?;
    let (lhs, rhs) = boundary_origin_terms(disk, origin.deriv_norm(), zeta)?;
    Ok(InequalityReport::at_least(
        "boundary_origin",
        describe(disk, zeta.zeta()),
        lhs,
        rhs,
        default_for("boundary_origin"),
    ))
}

/// Main bound `2(1 − ‖a‖)²/(1 − ‖a‖² + ‖F'(0)‖)` with `a = F(0)`.
pub fn shifted_main_bound(f0_norm: f64, deriv_norm: f64) -> f64 {
    let one_minus = 1.0 - f0_norm;
    2.0 * one_minus * one_minus / ((1.0 - f0_norm) * (1.0 + f0_norm) + deriv_norm)
}

/// Dimension-dependent floor: `2(1 − ‖a‖)²/(1 − ‖a‖² + √(1 − ‖a‖²))` for `m ≥ 2`,
/// `(1 − |a|)/(1 + |a|)` for `m = 1`.
pub fn shifted_floor(f0_norm: f64, dim: usize) -> f64 {
    if dim == 1 {
        (1.0 - f0_norm) / (1.0 + f0_norm)
    } else {
        let c = (1.0 - f0_norm) * (1.0 + f0_norm);
        2.0 * (1.0 - f0_norm).powi(2) / (c + c.sqrt())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedReport {
    pub main: InequalityReport,
    pub floor: InequalityReport,
}

/// Shifted boundary bound at a contact point, without assuming `F(0) = 0`.
pub fn boundary_bound_shifted(disk: &HoloDisk, zeta: &BoundaryPoint) -> Result<ShiftedReport> {
    let origin = OriginData::of(disk)?;
    let d = require_contact(disk, zeta)?.norm();
    let a = origin.value.norm();
    let instance = describe(disk, zeta.zeta());
    let tol = default_for("boundary_shifted");
    Ok(ShiftedReport {
        main: InequalityReport::at_least(
            "boundary_shifted",
            instance.clone(),
            d,
            shifted_main_bound(a, origin.deriv_norm()),
            tol,
        ),
        floor: InequalityReport::at_least("boundary_shifted_floor", instance, d, shifted_floor(a, disk.dim()), tol),
    })
}

/// `‖F'(0)‖ ≤ √(1 − ‖F(0)‖²)`.
pub fn schwarz_derivative_bound(disk: &HoloDisk) -> Result<InequalityReport> {
    let origin = OriginData::of(disk)?;
    let a = origin.value.norm();
    Ok(InequalityReport::at_most(
        "schwarz_derivative",
        format!("F={disk}"),
        origin.deriv_norm(),
        ((1.0 - a) * (1.0 + a)).sqrt(),
        default_for("schwarz_derivative"),
    ))
}

/// Angular derivative `f'(1)` of a scalar self-map with `f(1) = 1`, checked real positive.
pub fn angular_derivative_at_one(f: &HoloDisk) -> Result<f64> {
    if f.dim() != 1 {
        return Err(Error::Precondition("Julia inequality needs a scalar map".into()));
    }
    let (v, d) = f.eval_with_derivative(Complex64::new(1.0, 0.0))?;
    if (v[0] - Complex64::new(1.0, 0.0)).norm() > tolerance::BOUNDARY_CONTACT {
        return Err(Error::Precondition(format!("f(1) = 1 required, got {}", v[0])));
    }
    let d = d[0];
    if d.im.abs() > tolerance::MARGIN || !(d.re > 0.0) {
        return Err(Error::Precondition(format!("f'(1) must be real positive, got {d}")));
    }
    Ok(d.re)
}

/// `(|1 − f(z)|²/(1 − |f(z)|²), f'(1)|1 − z|²/(1 − |z|²))`.
pub fn julia_terms(f: &HoloDisk, angular: f64, z: Complex64) -> Result<(f64, f64)> {
    let rho = z.norm();
    if !(rho < 1.0) {
        return Err(Error::NotInterior(rho));
    }
    let one = Complex64::new(1.0, 0.0);
    let w = f.eval(z)?[0];
    let lhs = (one - w).norm_sqr() / f.unit_defect(z)?;
    let rhs = angular * (one - z).norm_sqr() / ((1.0 - rho) * (1.0 + rho));
    Ok((lhs, rhs))
}

/// Julia inequality `|1 − f(z)|²/(1 − |f(z)|²) ≤ f'(1)|1 − z|²/(1 − |z|²)`.
pub fn julia_margin(f: &HoloDisk, z: Complex64) -> Result<InequalityReport> {
    let angular = angular_derivative_at_one(f)?;
    let (lhs, rhs) = julia_terms(f, angular, z)?;
    Ok(InequalityReport::at_most("julia", describe(f, z), lhs, rhs, default_for("julia")))
}

/// Rigidity of the `‖F'(1)‖ = 1` case: when `F(0) = 0`, `‖F(1)‖ = 1` and
/// `‖F'(1)‖ ≤ 1 + 1e-10`, the map must satisfy `‖F(z)‖ = |z|`. Returns
/// `None` when the hypotheses do not hold, otherwise the worst deviation
/// over a polar grid (`rings` radii × `spokes` angles).
pub fn affine_rigidity_check(disk: &HoloDisk, rings: usize, spokes: usize) -> Result<Option<InequalityReport>> {
    let origin = OriginData::of(disk)?;
    if !origin.fixes_origin() {
        return Ok(None);
    }
    let (v1, d1) = disk.eval_with_derivative(Complex64::new(1.0, 0.0))?;
    if (v1.norm() - 1.0).abs() > tolerance::BOUNDARY_CONTACT || d1.norm() > 1.0 + tolerance::MARGIN {
        return Ok(None);
    }
    let mut worst: f64 = 0.0;
    for i in 1..=rings {
        let rho = i as f64 / (rings + 1) as f64;
        for k in 0..spokes {
            let z = Complex64::from_polar(rho, TAU * k as f64 / spokes as f64);
            worst = worst.max((disk.eval(z)?.norm() - rho).abs());
        }
    }
    Ok(Some(InequalityReport::at_most(
        "affine_rigidity",
        format!("F={disk}"),
        worst,
        0.0,
        default_for("affine_rigidity"),
    )))
}
