use serde::Serialize;

use super::disk::{BoundaryPoint, HoloDisk};
use crate::ball::inner;
use crate::error::{Error, Result};

/// Extrapolated limit of `(1 − ‖F(rζ)‖)/(1 − r)` as `r → 1⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialEstimate {
    pub estimate: f64,
    pub error_bound: f64,
}

/// Radii `1 − 2^{-k}`, `k = 3..=20`.
pub fn default_schedule() -> Vec<f64> {
    (3..=20).map(|k| 1.0 - 0.5f64.powi(k)).collect()
}

/// Richardson-extrapolated radial difference quotient.
///
/// With `h_k = 1 − r_k` and `q_k = (1 − ‖F(r_k ζ)‖)/h_k`, one extrapolation
/// level removes the `O(h)` term:
/// `R_k = (h_k q_{k+1} − h_{k+1} q_k)/(h_k − h_{k+1})`. The estimate is the last
/// `R_k`; the error bound is the last successive difference plus a rounding
/// allowance `16 ε / h_last`.
pub fn radial_derivative_estimate(disk: &HoloDisk, zeta: &BoundaryPoint, schedule: &[f64]) -> Result<RadialEstimate> {
    if schedule.len() < 3 {
        return Err(Error::InvalidParameter("radial schedule needs at least three radii".into()));
    }
    if schedule.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
        return Err(Error::InvalidParameter("radii must lie in (0, 1)".into()));
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("radii must be strictly increasing".into()));
    }
    let quotients = schedule
        .iter()
        .map(|&r| Ok((1.0 - r, (1.0 - disk.eval(zeta.zeta() * r)?.norm()) / (1.0 - r))))
        .collect::<Result<Vec<_>>>()?;
    let extrapolated: Vec<f64> = quotients
        .windows(2)
        .map(|w| {
            let ((h0, q0), (h1, q1)) = (w[0], w[1]);
            (h0 * q1 - h1 * q0) / (h0 - h1)
        })
        .collect();
    let n = extrapolated.len();
    let estimate = extrapolated[n - 1];
    let h_last = 1.0 - schedule[schedule.len() - 1];
    let rounding = 16.0 * f64::EPSILON * estimate.abs().max(1.0) / h_last;
    Ok(RadialEstimate { estimate, error_bound: (estimate - extrapolated[n - 2]).abs() + rounding })
}

/// Exact `d/dr ‖F(rζ)‖` at `r = 1`: `Re⟨ζ F'(ζ), F(ζ)⟩ / ‖F(ζ)‖`.
pub fn radial_derivative_exact(disk: &HoloDisk, zeta: &BoundaryPoint) -> Result<f64> {
    let (v, d) = disk.eval_with_derivative(zeta.zeta())?;
    let n = v.norm();
    if n == 0.0 {
        return Err(Error::Precondition("F(ζ) = 0".into()));
    }
    Ok(inner(&d.scale(zeta.zeta()), &v)?.re / n)
}

/// Norm of the complex derivative at a boundary point.
pub fn boundary_derivative_norm(disk: &HoloDisk, zeta: &BoundaryPoint) -> Result<f64> {
    Ok(disk.deriv(zeta.zeta())?.norm())
}
