use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cvec::{inner, CVec};
use crate::error::{Error, Result};

/// Slack allowed on `‖w‖ ≤ 1` so that unit vectors built in floating point
/// are still accepted as boundary points.
const CLOSED_BALL_SLACK: f64 = 1e-12;

/// The involutive automorphism `φ_a` of the unit ball in `C^m` exchanging `a` and `0`:
///
/// ```text
/// φ_a(w) = (a − P_a w − s Q_a w) / (1 − ⟨w, a⟩),   s = √(1 − ‖a‖²),
/// P_a w = ⟨w, a⟩ a / ⟨a, a⟩,   Q_a = I − P_a.
/// ```
///
/// For `a = 0` the projection is taken to be `P_0 = 0`, so `φ_0 = −I`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CVec", into = "CVec")]
pub struct BallAutomorphism {
    a: CVec,
    r: f64,
    s: f64,
    e: Option<CVec>,
}

impl BallAutomorphism {
    pub fn new(a: CVec) -> Result<Self> {
        let r = a.norm();
        if !(r < 1.0) {
            return Err(Error::ParameterOutsideBall(r));
        }
        let s = ((1.0 - r) * (1.0 + r)).sqrt();
        let e = a.normalized();
        Ok(BallAutomorphism { a, r, s, e })
    }

    pub fn identity_point(dim: usize) -> Self {
        BallAutomorphism::new(CVec::zeros(dim)).expect("zero is inside the ball")
    }

    pub fn a(&self) -> &CVec {
        &self.a
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `a/‖a‖`, undefined for `a = 0`.
    pub fn e(&self) -> Option<&CVec> {
        self.e.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    fn check_point(&self, w: &CVec) -> Result<()> {
        if w.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: w.dim() });
        }
        let n = w.norm();
        if n > 1.0 + CLOSED_BALL_SLACK {
            return Err(Error::OutsideClosedBall(n));
        }
        Ok(())
    }

    /// `1 − ⟨w, a⟩`, guarded against vanishing.
    fn denominator(&self, w: &CVec) -> Result<Complex64> {
        let d = Complex64::new(1.0, 0.0) - inner(w, &self.a)?;
        if d.norm() <= f64::EPSILON {
            return Err(Error::SingularDenominator("φ_a"));
        }
        Ok(d)
    }

    /// `P_a v` (zero when `a = 0`).
    fn project(&self, v: &CVec) -> CVec {
        match &self.e {
            Some(e) => e.scale(inner(v, e).expect("dimension checked")),
            None => CVec::zeros(v.dim()),
        }
    }

    /// `−P_a v − s Q_a v`, the linear part shared by `φ_a` and its differential.
    fn linear_part(&self, v: &CVec) -> CVec {
        let pv = self.project(v);
        let qv = v - &pv;
        &(-&pv) - &qv.scale_re(self.s)
    }

    pub fn apply(&self, w: &CVec) -> Result<CVec> {
        self.check_point(w)?;
        if self.e.is_none() {
            return Ok(-w);
        }
        let denom = self.denominator(w)?;
        let num = &self.a + &self.linear_part(w);
        Ok(num.scale(denom.inv()))
    }

    /// Complex differential `Dφ_a(w)[v] = (−P_a v − s Q_a v + ⟨v,a⟩ φ_a(w)) / (1 − ⟨w,a⟩)`.
    pub fn differential(&self, w: &CVec, v: &CVec) -> Result<CVec> {
        self.check_point(w)?;
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.dim() });
        }
        if self.e.is_none() {
            return Ok(-v);
        }
        let denom = self.denominator(w)?;
        let phi = self.apply(w)?;
        let num = &self.linear_part(v) + &phi.scale(inner(v, &self.a)?);
        Ok(num.scale(denom.inv()))
    }

    /// Residual of `1 − ‖φ_a(w)‖² = (1 − r²)(1 − ‖w‖²)/|1 − ⟨w,a⟩|²` for interior `w`.
    pub fn norm_identity_residual(&self, w: &CVec) -> Result<f64> {
        let nw = w.norm();
        if !(nw < 1.0) {
            return Err(Error::NotInterior(nw));
        }
        let phi = self.apply(w)?;
        let lhs = 1.0 - phi.norm_sqr();
        let denom = Complex64::new(1.0, 0.0) - inner(w, &self.a)?;
        let rhs = (1.0 - self.r * self.r) * (1.0 - w.norm_sqr()) / denom.norm_sqr();
        Ok((lhs - rhs).abs())
    }

    /// `‖φ_a(φ_a(w)) − w‖`.
    pub fn involution_residual(&self, w: &CVec) -> Result<f64> {
        let back = self.apply(&self.apply(w)?)?;
        Ok((&back - w).norm())
    }

    /// Operator norm of `Dφ_a(w)` by the closed form
    /// `max{s, ‖−e + r φ_a(w)‖} / |1 − ⟨w,a⟩|`.
    ///
    /// This is the value of the expression itself; away from `w ∈ {0, a, a/r}`
    /// it can fall below the true norm returned by [`Self::opnorm_oracle`].
    pub fn opnorm_formula(&self, w: &CVec) -> Result<f64> {
        self.check_point(w)?;
        let e = match &self.e {
            Some(e) => e,
            None => return Ok(1.0),
        };
        let denom = self.denominator(w)?;
        let phi = self.apply(w)?;
        let g = &phi.scale_re(self.r) - e;
        Ok(self.s.max(g.norm()) / denom.norm())
    }

    /// Matrix of `v ↦ Dφ_a(w)[v]` in the standard basis.
    pub fn differential_matrix(&self, w: &CVec) -> Result<DMatrix<Complex64>> {
        let m = self.dim();
        let mut mat = DMatrix::<Complex64>::zeros(m, m);
        for j in 0..m {
            let col = self.differential(w, &CVec::basis(m, j))?;
            for i in 0..m {
                mat[(i, j)] = col[i];
            }
        }
        Ok(mat)
    }

    /// True operator norm `sup_{‖v‖=1} ‖Dφ_a(w)[v]‖`: largest singular value of
    /// the real `2m × 2m` representation `[[Re M, −Im M], [Im M, Re M]]`.
    pub fn opnorm_oracle(&self, w: &CVec) -> Result<f64> {
        let mat = self.differential_matrix(w)?;
        let m = self.dim();
        let real = DMatrix::<f64>::from_fn(2 * m, 2 * m, |i, j| {
            let z = mat[(i % m, j % m)];
            match (i < m, j < m) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        });
        Ok(real.singular_values().max())
    }
}

impl TryFrom<CVec> for BallAutomorphism {
    type Error = Error;
    fn try_from(a: CVec) -> Result<Self> {
        BallAutomorphism::new(a)
    }
}

impl From<BallAutomorphism> for CVec {
    fn from(aut: BallAutomorphism) -> CVec {
        aut.a
    }
}

/// `‖w − a‖ / |1 − ⟨w, a⟩|`.
///
/// Dominates `‖φ_a(w)‖`, with equality when `m = 1` or `w` is a complex
/// multiple of `a`.
pub fn pseudo_hyperbolic_quotient(a: &CVec, w: &CVec) -> Result<f64> {
    let diff = w.try_sub(a)?;
    let denom = Complex64::new(1.0, 0.0) - inner(w, a)?;
    if denom.norm() <= f64::EPSILON {
        return Err(Error::SingularDenominator("pseudo-hyperbolic quotient"));
    }
    Ok(diff.norm() / denom.norm())
}
