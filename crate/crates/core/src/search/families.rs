use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::nelder_mead::{nelder_mead, NelderMeadOptions, NelderMeadResult};
use crate::ball::{BallAutomorphism, CVec};
use crate::error::{Error, Result};
use crate::holo::bounds::{boundary_origin_terms, shifted_main_bound};
use crate::holo::{rotated_extremal, BoundaryPoint, Expr, HoloDisk};
use crate::rng;

/// Largest admissible modulus of the Blaschke parameter.
pub const MAX_MODULUS: f64 = 1.0 - 1e-6;

/// Boundary bound margin `|f'(1)| − 2/(1 + |f'(0)|)` for `f = λ z b_c(z)`,
/// `c = modulus · e^{i phase}`, normalized so that `f(1) = 1`.
pub fn margin_objective_1d(params: &[f64]) -> Result<f64> {
    let &[modulus, phase] = params else {
        return Err(Error::DimensionMismatch { expected: 2, got: params.len() });
    };
    if !(0.0..=MAX_MODULUS).contains(&modulus) || !phase.is_finite() {
        return Err(Error::InvalidParameter(format!("modulus {modulus} outside [0, 1 − 1e−6] or bad phase")));
    }
    let f = rotated_extremal(Complex64::from_polar(modulus, phase))?;
    let deriv_norm = f.deriv(Complex64::new(0.0, 0.0))?.norm();
    let (lhs, rhs) = boundary_origin_terms(&f, deriv_norm, &BoundaryPoint::one())?;
    Ok(lhs - rhs)
}

/// `F(z) = φ_{−b}(z b_c(z) u)`; `params = [Re b, Im b (m each), Re c, Im c, Re u, Im u (m each)]`,
/// with `u` normalized.
pub fn family_md_disk(m: usize, params: &[f64]) -> Result<HoloDisk> {
    if params.len() != 4 * m + 2 {
        return Err(Error::DimensionMismatch { expected: 4 * m + 2, got: params.len() });
    }
    let b = CVec::new((0..m).map(|k| Complex64::new(-params[k], -params[m + k])).collect());
    let c = Complex64::new(params[2 * m], params[2 * m + 1]);
    let u = CVec::new((0..m).map(|k| Complex64::new(params[2 * m + 2 + k], params[3 * m + 2 + k])).collect());
    if b.norm() > 0.9 + 1e-12 || c.norm() > 0.9 + 1e-12 {
        return Err(Error::InvalidParameter(format!("‖b‖ = {}, |c| = {} must be ≤ 0.9", b.norm(), c.norm())));
    }
    let u = u.normalized().ok_or_else(|| Error::InvalidParameter("u = 0".into()))?;
    HoloDisk::new(Expr::compose(BallAutomorphism::new(b)?, Expr::embed(Expr::mul(Expr::Z, Expr::Blaschke(c)), u)))
}

/// Shifted boundary margin `‖F'(1)‖ − 2(1 − ‖F(0)‖)²/(1 − ‖F(0)‖² + ‖F'(0)‖)` on [`family_md_disk`].
pub fn margin_objective_md(m: usize, params: &[f64]) -> Result<f64> {
    let f = family_md_disk(m, params)?;
    let (v0, d0) = f.eval_with_derivative(Complex64::new(0.0, 0.0))?;
    let d1 = f.deriv(Complex64::new(1.0, 0.0))?;
    Ok(d1.norm() - shifted_main_bound(v0.norm(), d0.norm()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum Family {
    /// Parameters `(modulus, phase)`.
    Family1d,
    /// Parameters as in [`family_md_disk`].
    FamilyMd { dim: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub bounds: Vec<(f64, f64)>,
}

impl FamilySpec {
    /// Modulus in `[0.1, 0.9]`, phase in `[−π, π]`.
    pub fn family_1d() -> Self {
        Self::family_1d_phases(-PI, PI)
    }

    pub fn family_1d_phases(lo: f64, hi: f64) -> Self {
        FamilySpec { family: Family::Family1d, bounds: vec![(0.1, 0.9), (lo, hi)] }
    }

    /// Coordinate boxes chosen so that `‖b‖ ≤ 0.9` and `|c| ≤ 0.9`.
    pub fn family_md(m: usize) -> Self {
        assert!(m >= 1, "dimension must be positive");
        let bb = 0.9 / ((2 * m) as f64).sqrt();
        let cb = 0.9 / 2f64.sqrt();
        let mut bounds = vec![(-bb, bb); 2 * m];
        bounds.extend([(-cb, cb); 2]);
        bounds.extend(vec![(-1.0, 1.0); 2 * m]);
        FamilySpec { family: Family::FamilyMd { dim: m }, bounds }
    }

    pub fn objective(&self, params: &[f64]) -> Result<f64> {
        match self.family {
            Family::Family1d => margin_objective_1d(params),
            Family::FamilyMd { dim } => margin_objective_md(dim, params),
        }
    }

    fn label(&self) -> String {
        match self.family {
            Family::Family1d => "search.family_1d".into(),
            Family::FamilyMd { dim } => format!("search.family_md.{dim}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartRun {
    pub index: usize,
    pub x0: Vec<f64>,
    #[serde(flatten)]
    pub result: NelderMeadResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport {
    pub spec: FamilySpec,
    pub seed: u64,
    pub restarts: usize,
    /// Best margin found over all restarts; not a certified infimum.
    pub best_margin: f64,
    pub argmin: Vec<f64>,
    pub best_restart: usize,
    /// Smallest objective value at any point evaluated by any restart.
    pub min_evaluated: f64,
    pub runs: Vec<RestartRun>,
}

/// Multi-start Nelder–Mead; restart `k` starts at a point drawn uniformly in the
/// box from its own stream. Ties go to the lowest restart index.
pub fn sharpness_report(spec: &FamilySpec, restarts: usize, seed: u64) -> Result<SharpnessReport> {
    if restarts == 0 {
        return Err(Error::InvalidParameter("at least one restart is needed".into()));
    }
    let label = spec.label();
    let widest = spec.bounds.iter().map(|(lo, hi)| hi - lo).fold(0.0, f64::max);
    let options = NelderMeadOptions { bounds: Some(spec.bounds.clone()), initial_step: 0.1 * widest, ..Default::default() };
    let mut runs = Vec::with_capacity(restarts);
    for index in 0..restarts {
        let mut rng = rng::stream(seed, &label, index as u64);
        let x0: Vec<f64> = spec.bounds.iter().map(|&(lo, hi)| rng.gen_range(lo..=hi)).collect();
        let result = nelder_mead(|x| spec.objective(x).unwrap_or(f64::INFINITY), &x0, &options)?;
        runs.push(RestartRun { index, x0, result });
    }
    let best = runs
        .iter()
        .min_by(|a, b| a.result.fmin.total_cmp(&b.result.fmin).then(a.index.cmp(&b.index)))
        .expect("restarts > 0");
    Ok(SharpnessReport {
        spec: spec.clone(),
        seed,
        restarts,
        best_margin: best.result.fmin,
        argmin: best.result.xmin.clone(),
        best_restart: best.index,
        min_evaluated: runs.iter().map(|r| r.result.min_evaluated).fold(f64::INFINITY, f64::min),
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holo::nonreal_parameter_strictness;

    #[test]
    fn one_dimensional_objective_examples() {
        assert!(margin_objective_1d(&[0.5, 0.0]).unwrap().abs() < 1e-12);
        for phase in [0.0, 1.0, 3.0] {
            assert!(margin_objective_1d(&[0.0, phase]).unwrap().abs() < 1e-12);
        }
        let v = margin_objective_1d(&[0.5, PI / 2.0]).unwrap();
        let oracle = nonreal_parameter_strictness(Complex64::from_polar(0.5, PI / 2.0)).unwrap().margin;
        // (1 − r²)/(1 + r²) − (1 − r)/(1 + r) at r = 1/2
        assert!((v - oracle).abs() < 1e-14 && (v - (0.6 - 1.0 / 3.0)).abs() < 1e-14);
        assert!(margin_objective_1d(&[1.0, 0.0]).is_err());
        assert!(margin_objective_1d(&[-0.1, 0.0]).is_err());
        assert!(margin_objective_1d(&[0.5]).is_err());
    }

    #[test]
    fn multi_dimensional_objective_examples() {
        let zero = margin_objective_md(1, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(zero.abs() < 1e-12);
        // b = 0.5: F = φ_{−0.5}(z²) = −(z² + 0.5)/(1 + 0.5 z²); ‖F(0)‖ = 0.5, F'(0) = 0,
        // F'(1) = 2 (1 − 0.25)/1.5² = 2/3, bound 2 · 0.25/0.75 = 2/3.
        let f = family_md_disk(1, &[0.5, 0.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
        let z = Complex64::new(0.3, 0.4);
        assert!((f.eval(z).unwrap()[0] + (z * z + 0.5) / (z * z * 0.5 + 1.0)).norm() < 1e-15);
        let v = margin_objective_md(1, &[0.5, 0.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(v.abs() < 1e-12, "{v}");
        let p = [0.3, 0.0, 0.0, 0.0, 0.2, 0.0, 1.0, 0.5, 0.0, -0.3];
        assert!(margin_objective_md(2, &p).unwrap() >= -1e-8);
        assert!(margin_objective_md(2, &p[..9]).is_err());
        assert!(margin_objective_md(1, &[0.95, 0.0, 0.0, 0.0, 1.0, 0.0]).is_err());
        assert!(margin_objective_md(1, &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn md_family_has_boundary_contact() {
        let p = [0.2, -0.1, 0.3, 0.05, -0.4, 0.5, 0.3, -0.2, 0.7, 0.1];
        let f = family_md_disk(2, &p).unwrap();
        for k in 0..16 {
            let zeta = Complex64::from_polar(1.0, k as f64 * 0.4);
            assert!((f.eval(zeta).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn box_bounds_keep_parameters_admissible() {
        let spec = FamilySpec::family_md(3);
        assert_eq!(spec.bounds.len(), 14);
        let corner: Vec<f64> = spec.bounds.iter().map(|b| b.1).collect();
        assert!(spec.objective(&corner).is_ok());
    }

    #[test]
    fn report_is_deterministic() {
        let spec = FamilySpec::family_1d();
        let a = sharpness_report(&spec, 3, 11).unwrap();
        let b = sharpness_report(&spec, 3, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.best_margin <= 1e-8);
        assert!(a.min_evaluated >= -1e-8);
        assert!(a.argmin[1].sin().abs() <= 1e-4);
    }
}
