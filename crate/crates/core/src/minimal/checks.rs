//! Margins for the minimal-disk inequalities.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::weierstrass::{boundary_grid, interior_grid, norm3, SurfacePoint, WeierstrassDisk};
use crate::ball::{cayley_klein_dist, poincare_dist, MetricPoint};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::report::InequalityReport;
use crate::tolerance::{self, default_for};

/// Largest deviation from the isothermal relations
/// `|F_x| = |F_y| = λ`, `⟨F_x, F_y⟩ = 0`, `|F_r| = λ`, `|F_t| = rλ`.
pub fn isothermal_residual(sp: &SurfacePoint) -> f64 {
    let lambda = sp.lambda;
    let r = (sp.z[0] * sp.z[0] + sp.z[1] * sp.z[1]).sqrt();
    let mut res = (norm3(&sp.fx) - lambda)
        .abs()
        .max((norm3(&sp.fy) - lambda).abs())
        .max(super::weierstrass::dot3(&sp.fx, &sp.fy).abs());
    if let (Some(fr), Some(ft)) = (sp.fr, sp.ft) {
        res = res.max((norm3(&fr) - lambda).abs()).max((norm3(&ft) - r * lambda).abs());
    }
    res
}

/// `λ²` from the partials next to `|p|²(1 + |q|²)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricAudit {
    pub lambda: f64,
    pub stated_rhs: f64,
    /// `λ² / stated_rhs`; `None` where `p` vanishes.
    pub ratio: Option<f64>,
}

pub fn metric_identity_audit(w: &WeierstrassDisk, z: Complex64) -> MetricAudit {
    let sp = w.partials(z);
    let lambda_sq = norm3(&sp.fx) * norm3(&sp.fy);
    let q = w.q().eval(z).norm_sqr();
    let stated_rhs = w.p().eval(z).norm_sqr() * (1.0 + q) * (1.0 + q);
    MetricAudit {
        lambda: lambda_sq.sqrt(),
        stated_rhs,
        ratio: (stated_rhs > 0.0).then(|| lambda_sq / stated_rhs),
    }
}

/// Constant `c` in `λ = c |p| (1 + |q|²)` determined from a set of audits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditSummary {
    pub samples: usize,
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// `(max − min) / mean`.
    pub relative_spread: f64,
    /// `√(mean ratio)`.
    pub constant: f64,
    /// Constant implied by `|F_r|² = |p|²(1 + |q|²)²`.
    pub claimed_constant: f64,
}

pub fn summarize_audits(audits: &[MetricAudit]) -> Result<AuditSummary> {
    let ratios: Vec<f64> = audits.iter().filter_map(|a| a.ratio).collect();
    if ratios.is_empty() {
        return Err(Error::InvalidParameter("no audit samples with p ≠ 0".into()));
    }
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    Ok(AuditSummary {
        samples: ratios.len(),
        ratio_min: min,
        ratio_max: max,
        relative_spread: (max - min) / mean,
        constant: mean.sqrt(),
        claimed_constant: 1.0,
    })
}

fn require_in_ball(w: &WeierstrassDisk) -> Result<()> {
    let sup = w.ball_sup();
    if sup > 1.0 + tolerance::BOUNDARY_CONTACT {
        return Err(Error::OutsideClosedBall(sup));
    }
    Ok(())
}

fn describe(w: &WeierstrassDisk, z: Complex64) -> String {
    format!("W={w}; z={}", crate::holo::notation::format_complex(z))
}

/// `(‖f(a)‖, (|a| + ‖f(0)‖)/(1 + |a|‖f(0)‖))`.
pub fn lemma0_terms(w: &WeierstrassDisk, f0_norm: f64, a: Complex64) -> Result<(f64, f64)> {
    let rho = a.norm();
    if !(rho <= 1.0) {
        return Err(Error::OutsideClosedBall(rho));
    }
    Ok((norm3(&w.eval(a)), (rho + f0_norm) / (1.0 + rho * f0_norm)))
}

/// `‖f(a)‖ ≤ (|a| + ‖f(0)‖)/(1 + |a|‖f(0)‖)` for a minimal disk in the closed ball.
pub fn lemma0_margin(w: &WeierstrassDisk, a: Complex64) -> Result<InequalityReport> {
    require_in_ball(w)?;
    let f0 = norm3(&w.eval(Complex64::new(0.0, 0.0)));
    let (lhs, rhs) = lemma0_terms(w, f0, a)?;
    Ok(InequalityReport::at_most("lemma0", describe(w, a), lhs, rhs, default_for("lemma0")))
}

/// `(Cayley–Klein distance of the images, Poincaré distance of the parameters)`.
pub fn distance_decreasing_terms(w: &WeierstrassDisk, z: Complex64, v: Complex64) -> Result<(f64, f64)> {
    let dp = poincare_dist(z, v)?;
    let fz = MetricPoint::real(&w.eval(z))?;
    let fv = MetricPoint::real(&w.eval(v))?;
    Ok((cayley_klein_dist(&fz, &fv)?, dp))
}

/// `d_CK(f(z), f(w)) ≤ d_P(z, w)`; the margin is `d_P − d_CK`.
pub fn distance_decreasing_margin(w: &WeierstrassDisk, z: Complex64, v: Complex64) -> Result<InequalityReport> {
    let (lhs, rhs) = distance_decreasing_terms(w, z, v)?;
    let instance = format!("{}; w={}", describe(w, z), crate::holo::notation::format_complex(v));
    Ok(InequalityReport::at_most("distance_decreasing", instance, lhs, rhs, default_for("distance_decreasing")))
}

/// `λ(ζ) ≥ (1 − ‖F(0)‖)/(1 + ‖F(0)‖)` at a boundary point with `‖F(ζ)‖ = 1`.
pub fn boundary_minimal_margin(w: &WeierstrassDisk, zeta: Complex64) -> Result<InequalityReport> {
    if (zeta.norm() - 1.0).abs() > 1e-14 {
        return Err(Error::InvalidParameter(format!("|ζ| = {} is not 1", zeta.norm())));
    }
    let contact = norm3(&w.eval(zeta));
    if (contact - 1.0).abs() > tolerance::BOUNDARY_CONTACT {
        return Err(Error::Precondition(format!("‖F(ζ)‖ = 1 required, got {contact}")));
    }
    let f0 = norm3(&w.eval(Complex64::new(0.0, 0.0)));
    let lambda = norm3(&w.partials(zeta).fr.expect("ζ ≠ 0"));
    Ok(InequalityReport::at_least(
        "boundary_minimal",
        describe(w, zeta),
        lambda,
        (1.0 - f0) / (1.0 + f0),
        default_for("boundary_minimal"),
    ))
}

/// Testable links of the half-sphere chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    /// Interior grid minimum of `|p|` against the refined boundary minimum.
    pub min_modulus: InequalityReport,
    /// `min λ ≥ c · min_T |p|` with `c` the audited constant.
    pub lambda_floor: InequalityReport,
    /// `min λ ≥ ½(1 − ‖F(0)‖)/(1 + ‖F(0)‖)`, present when `‖F‖ ≡ 1` on the boundary grid.
    pub corollary: Option<InequalityReport>,
}

impl ChainReport {
    pub fn pass(&self) -> bool {
        self.min_modulus.pass && self.lambda_floor.pass && self.corollary.as_ref().is_none_or(|r| r.pass)
    }

    pub fn reports(&self) -> Vec<&InequalityReport> {
        [Some(&self.min_modulus), Some(&self.lambda_floor), self.corollary.as_ref()].into_iter().flatten().collect()
    }
}

fn require_chain_preconditions(w: &WeierstrassDisk) -> Result<()> {
    match w.p_winding_number()? {
        0 => {}
        k => return Err(Error::Precondition(format!("p has {k} zero(s) in the disk; not an immersion"))),
    }
    if !w.half_sphere() {
        return Err(Error::Precondition("|q| < 1 fails on the boundary".into()));
    }
    Ok(())
}

/// Minimum of `|p|` on the unit circle: grid search then golden-section refinement.
pub fn boundary_min_modulus(w: &WeierstrassDisk) -> f64 {
    let n = tolerance::BOUNDARY_GRID;
    let at = |t: f64| w.p().eval(Complex64::from_polar(1.0, t)).norm();
    let (k, _) = boundary_grid(n)
        .map(|z| w.p().eval(z).norm())
        .enumerate()
        .fold((0, f64::INFINITY), |best, (k, v)| if v < best.1 { (k, v) } else { best });
    let h = TAU / n as f64;
    let (mut lo, mut hi) = (h * (k as f64 - 1.0), h * (k as f64 + 1.0));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..80 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if at(m1) < at(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    at(0.5 * (lo + hi)).min(at(h * k as f64))
}

/// Half-sphere chain with the audited conformal constant `c`.
pub fn halfsphere_chain_check(w: &WeierstrassDisk, c: f64) -> Result<ChainReport> {
    require_chain_preconditions(w)?;
    let tol = default_for("halfsphere_chain");
    let name = w.to_string();
    let bmin = boundary_min_modulus(w);
    let mut imin = f64::INFINITY;
    let mut lmin = f64::INFINITY;
    for z in interior_grid(tolerance::INTERIOR_GRID) {
        imin = imin.min(w.p().eval(z).norm());
        lmin = lmin.min(w.conformal_factor(z));
    }
    let min_modulus = InequalityReport::at_least("halfsphere_chain.min_modulus", name.clone(), imin, bmin, tol);
    let lambda_floor = InequalityReport::at_least("halfsphere_chain.lambda_floor", name.clone(), lmin, c * bmin, tol);
    let on_sphere = boundary_grid(tolerance::BOUNDARY_GRID)
        .all(|z| (norm3(&w.eval(z)) - 1.0).abs() <= tolerance::BOUNDARY_CONTACT);
    let corollary = on_sphere.then(|| {
        let f0 = norm3(&w.eval(Complex64::new(0.0, 0.0)));
        InequalityReport::at_least("halfsphere_chain.corollary", name, lmin, 0.5 * (1.0 - f0) / (1.0 + f0), tol)
    });
    Ok(ChainReport { min_modulus, lambda_floor, corollary })
}

/// Image length of the parameter segment `[z1, z2]`.
pub fn segment_length(w: &WeierstrassDisk, z1: Complex64, z2: Complex64, rule: &GaussLegendre) -> f64 {
    let d = z2 - z1;
    d.norm() * rule.integrate_composite(0.0, 1.0, 4, |t| w.conformal_factor(z1 + d * t))
}

/// `|z₁ − z₂| ≤ 2(1 + ‖F(0)‖)/(1 − ‖F(0)‖) · length(F([z₁, z₂]))`, reported for the
/// pair with the smallest margin.
pub fn inverse_lipschitz_check(w: &WeierstrassDisk, pairs: &[(Complex64, Complex64)]) -> Result<InequalityReport> {
    require_chain_preconditions(w)?;
    if pairs.is_empty() {
        return Err(Error::InvalidParameter("no parameter pairs".into()));
    }
    let f0 = norm3(&w.eval(Complex64::new(0.0, 0.0)));
    if !(f0 < 1.0) {
        return Err(Error::NotInterior(f0));
    }
    let k = 2.0 * (1.0 + f0) / (1.0 - f0);
    let rule = GaussLegendre::new(16);
    let mut worst: Option<InequalityReport> = None;
    for &(z1, z2) in pairs {
        for z in [z1, z2] {
            if !(z.norm() <= 1.0) {
                return Err(Error::OutsideClosedBall(z.norm()));
            }
        }
        let rhs = k * segment_length(w, z1, z2, &rule);
        let instance = format!(
            "{}; w={}",
            describe(w, z1),
            crate::holo::notation::format_complex(z2)
        );
        let rep = InequalityReport::at_most("inverse_lipschitz", instance, (z1 - z2).norm(), rhs, default_for("inverse_lipschitz"));
        if worst.as_ref().is_none_or(|r| rep.margin < r.margin) {
            worst = Some(rep);
        }
    }
    Ok(worst.expect("pairs is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn flat() -> WeierstrassDisk {
        WeierstrassDisk::planar(c(0.0, 0.0), 1.0)
    }

    fn enneper_in_ball() -> WeierstrassDisk {
        WeierstrassDisk::enneper().scaled_into_ball()
    }

    #[test]
    fn isothermal_on_enneper() {
        let w = WeierstrassDisk::enneper();
        let sp = w.partials(c(0.5, 0.0));
        assert!(isothermal_residual(&sp) <= 1e-12);
        // λ = ½ |p| (1 + |q|²) = ½ · 1.25
        assert!((sp.lambda - 0.625).abs() < 1e-15);
    }

    #[test]
    fn audit_constant_is_one_quarter() {
        let a = metric_identity_audit(&flat(), c(0.3, 0.1));
        assert!((a.lambda - 1.0).abs() < 1e-15 && (a.stated_rhs - 4.0).abs() < 1e-15);
        assert!((a.ratio.unwrap() - 0.25).abs() < 1e-15);
        let e = metric_identity_audit(&WeierstrassDisk::enneper(), c(0.5, 0.0));
        assert!((e.ratio.unwrap() - 0.25).abs() < 1e-15);
        let w = WeierstrassDisk::new(Poly::new(vec![c(1.0, 1.0), c(0.0, 0.0), c(0.3, 0.0)]), Poly::constant(c(0.0, 0.0)));
        let audits: Vec<_> = (0..20).map(|k| metric_identity_audit(&w, Complex64::from_polar(0.9, k as f64))).collect();
        let s = summarize_audits(&audits).unwrap();
        assert!(s.relative_spread <= 1e-12);
        assert!((s.constant - 0.5).abs() < 1e-14);
    }

    #[test]
    fn lemma0_examples() {
        let r = lemma0_margin(&flat(), c(0.4, -0.3)).unwrap();
        assert!(r.margin.abs() < 1e-15);
        let r = lemma0_margin(&enneper_in_ball(), c(0.7, 0.0)).unwrap();
        assert!(r.margin > 0.0);
        let translated = WeierstrassDisk::planar(c(0.0, 0.0), 0.5).with_base([0.0, 0.0, 0.3]);
        for a in [0.0, 0.2, 0.9, 1.0] {
            assert!(lemma0_margin(&translated, c(a, 0.0)).unwrap().margin >= 0.0);
        }
        assert!(matches!(lemma0_margin(&WeierstrassDisk::enneper().scaled(3.0), c(0.1, 0.0)), Err(Error::OutsideClosedBall(_))));
    }

    #[test]
    fn distance_decreasing_examples() {
        let e = enneper_in_ball();
        assert!(distance_decreasing_margin(&e, c(0.3, 0.2), c(-0.5, 0.1)).unwrap().margin > 0.0);
        assert_eq!(distance_decreasing_margin(&e, c(0.3, 0.2), c(0.3, 0.2)).unwrap().margin, 0.0);
        let f = flat();
        assert!(distance_decreasing_margin(&f, c(-0.6, 0.0), c(0.7, 0.0)).unwrap().margin.abs() < 1e-12);
    }

    #[test]
    fn boundary_minimal_examples() {
        let r = boundary_minimal_margin(&flat(), c(1.0, 0.0)).unwrap();
        assert!(r.margin.abs() < 1e-15);
        let tilted = WeierstrassDisk::planar(c(0.3, -0.8), 1.0);
        for t in [0.0, 1.0, 4.0] {
            let r = boundary_minimal_margin(&tilted, Complex64::from_polar(1.0, t)).unwrap();
            assert!(r.margin.abs() < 1e-12);
        }
        // Horizontal slice at height 0.6: radius 0.8, contact along the whole circle.
        let slice = WeierstrassDisk::planar(c(0.0, 0.0), 0.8).with_base([0.0, 0.0, 0.6]);
        let r = boundary_minimal_margin(&slice, c(0.0, 1.0)).unwrap();
        assert!((r.margin - (0.8 - 0.4 / 1.6)).abs() < 1e-12);
        assert!(boundary_minimal_margin(&slice.scaled(0.5), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn chain_on_planar_disk() {
        let rep = halfsphere_chain_check(&flat(), 0.5).unwrap();
        assert_eq!(rep.min_modulus.margin, 0.0);
        let cor = rep.corollary.as_ref().unwrap();
        assert!((cor.margin - 0.5).abs() < 1e-12);
        assert!(rep.pass());
    }

    #[test]
    fn chain_on_curved_data() {
        let w = WeierstrassDisk::new(Poly::new(vec![c(2.0, 0.0), c(1.0, 0.0)]), Poly::z().scale(c(0.5, 0.0)));
        let rep = halfsphere_chain_check(&w, 0.5).unwrap();
        assert!(rep.min_modulus.margin >= -1e-8, "{:?}", rep.min_modulus);
        assert!((rep.min_modulus.rhs - 1.0).abs() < 1e-12);
        assert!(rep.corollary.is_none());
        assert!(rep.pass());
        let bad = WeierstrassDisk::new(Poly::new(vec![c(0.5, 0.0), c(1.0, 0.0)]), Poly::constant(c(0.0, 0.0)));
        assert!(matches!(halfsphere_chain_check(&bad, 0.5), Err(Error::Precondition(_))));
    }

    #[test]
    fn inverse_lipschitz_examples() {
        let f = flat();
        let r = inverse_lipschitz_check(&f, &[(c(0.1, 0.2), c(-0.5, 0.4))]).unwrap();
        let d = (c(0.1, 0.2) - c(-0.5, 0.4)).norm();
        assert!((r.margin - d).abs() < 1e-12);
        let r = inverse_lipschitz_check(&f, &[(c(0.3, 0.0), c(0.3, 0.0))]).unwrap();
        assert_eq!(r.margin, 0.0);
        let w = WeierstrassDisk::new(Poly::new(vec![c(2.0, 0.0), c(1.0, 0.0)]), Poly::z().scale(c(0.5, 0.0))).scaled_into_ball();
        let pairs = [(c(0.0, 0.0), c(0.9, 0.1)), (c(-0.7, 0.0), c(0.2, 0.6))];
        assert!(inverse_lipschitz_check(&w, &pairs).unwrap().margin >= 0.0);
    }

    #[test]
    fn segment_length_matches_closed_form() {
        // λ ≡ ρ on a planar disk
        let w = WeierstrassDisk::planar(c(0.2, 0.2), 0.7);
        let len = segment_length(&w, c(-0.3, 0.1), c(0.5, -0.2), &GaussLegendre::new(16));
        assert!((len - 0.7 * (c(0.8, -0.3)).norm()).abs() < 1e-14);
    }
}
