use std::f64::consts::TAU;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::holo::notation::format_complex;
use crate::poly::Poly;
use crate::quadrature::GaussLegendre;
use crate::tolerance;

/// Minimal disk `F(z) = F(0) + Re ∫_0^z Φ` with Weierstrass data `(p, q)`,
/// `Φ = (½(1 − q²)p, (i/2)(1 + q²)p, q p)`.
///
/// With this convention `F_x = Re Φ`, `F_y = −Im Φ` and the conformal factor
/// is `λ = |Φ|/√2`.
#[derive(Debug, Clone)]
pub struct WeierstrassDisk {
    p: Poly,
    q: Poly,
    base: [f64; 3],
    phi: [Poly; 3],
    primitive: [Poly; 3],
    ball_sup: OnceLock<f64>,
}

/// Position, partial derivatives and conformal factor at one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub z: [f64; 2],
    pub position: [f64; 3],
    pub fx: [f64; 3],
    pub fy: [f64; 3],
    /// `F_r = F_x cos t + F_y sin t`; undefined at `z = 0`.
    pub fr: Option<[f64; 3]>,
    /// `F_t = −F_x r sin t + F_y r cos t`; undefined at `z = 0`.
    pub ft: Option<[f64; 3]>,
    /// `|Φ|/√2`.
    pub lambda: f64,
}

pub(crate) fn norm3(v: &[f64; 3]) -> f64 {
    dot3(v, v).sqrt()
}

pub(crate) fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl WeierstrassDisk {
    pub fn new(p: Poly, q: Poly) -> Self {
        let one = Poly::constant(Complex64::new(1.0, 0.0));
        let q2 = &q * &q;
        let half = Complex64::new(0.5, 0.0);
        let phi = [
            &(&one - &q2) * &p.scale(half),
            &(&one + &q2) * &p.scale(Complex64::new(0.0, 0.5)),
            &q * &p,
        ];
        let primitive = [phi[0].integral(), phi[1].integral(), phi[2].integral()];
        WeierstrassDisk { p, q, base: [0.0; 3], phi, primitive, ball_sup: OnceLock::new() }
    }

    pub fn with_base(mut self, base: [f64; 3]) -> Self {
        self.base = base;
        self.ball_sup = OnceLock::new();
        self
    }

    /// Flat disk in the plane with unit normal given by the constant Gauss map
    /// `q ≡ q0`, through `base`, with conformal factor `λ ≡ radius`.
    pub fn planar(q0: Complex64, radius: f64) -> Self {
        let p0 = 2.0 * radius / (1.0 + q0.norm_sqr());
        WeierstrassDisk::new(Poly::constant(Complex64::new(p0, 0.0)), Poly::constant(q0))
    }

    /// Enneper data `p = 1`, `q = z`.
    pub fn enneper() -> Self {
        WeierstrassDisk::new(Poly::constant(Complex64::new(1.0, 0.0)), Poly::z())
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn base(&self) -> [f64; 3] {
        self.base
    }

    /// The surface scaled by `k` about the origin (`p ↦ kp`, `F(0) ↦ kF(0)`).
    pub fn scaled(&self, k: f64) -> Self {
        WeierstrassDisk::new(self.p.scale(Complex64::new(k, 0.0)), self.q.clone())
            .with_base(self.base.map(|b| b * k))
    }

    /// Scaled by `1/((1 + 1e-6) · max ‖F‖)` over the certification grids.
    pub fn scaled_into_ball(&self) -> Self {
        self.scaled(1.0 / ((1.0 + tolerance::SCALE_HEADROOM) * self.ball_sup()))
    }

    pub fn phi(&self, z: Complex64) -> [Complex64; 3] {
        [self.phi[0].eval(z), self.phi[1].eval(z), self.phi[2].eval(z)]
    }

    pub fn eval(&self, z: Complex64) -> [f64; 3] {
        let mut out = self.base;
        for (o, prim) in out.iter_mut().zip(&self.primitive) {
            *o += prim.eval(z).re;
        }
        out
    }

    /// `F(z)` zero-padded into `R^n`, `n ≥ 3`.
    pub fn eval_in(&self, z: Complex64, n: usize) -> Vec<f64> {
        assert!(n >= 3, "minimal disks live in R^n with n ≥ 3");
        let mut v = self.eval(z).to_vec();
        v.resize(n, 0.0);
        v
    }

    /// Unit normal `(2 Re q, 2 Im q, 1 − |q|²)/(1 + |q|²)`.
    pub fn gauss_normal(&self, z: Complex64) -> [f64; 3] {
        let q = self.q.eval(z);
        let m = q.norm_sqr();
        [2.0 * q.re, 2.0 * q.im, 1.0 - m].map(|c| c / (1.0 + m))
    }

    /// Oriented unit normal `F_x × F_y / |F_x × F_y|` from the partials; `None` at
    /// branch points. Equals [`gauss_normal`](Self::gauss_normal) with the third
    /// coordinate negated.
    pub fn tangent_normal(&self, z: Complex64) -> Option<[f64; 3]> {
        let phi = self.phi(z);
        let (a, b) = (phi.map(|c| c.re), phi.map(|c| -c.im));
        let n = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let len = norm3(&n);
        (len > 0.0).then(|| n.map(|c| c / len))
    }

    /// `|Φ|/√2`.
    pub fn conformal_factor(&self, z: Complex64) -> f64 {
        let phi = self.phi(z);
        (phi.iter().map(|c| c.norm_sqr()).sum::<f64>() / 2.0).sqrt()
    }

    pub fn partials(&self, z: Complex64) -> SurfacePoint {
        let phi = self.phi(z);
        let fx = phi.map(|c| c.re);
        let fy = phi.map(|c| -c.im);
        let (r, t) = z.to_polar();
        let (fr, ft) = if r > 0.0 {
            let (s, c) = t.sin_cos();
            let fr = [0, 1, 2].map(|i| fx[i] * c + fy[i] * s);
            let ft = [0, 1, 2].map(|i| -fx[i] * r * s + fy[i] * r * c);
            (Some(fr), Some(ft))
        } else {
            (None, None)
        };
        SurfacePoint {
            z: [z.re, z.im],
            position: self.eval(z),
            fx,
            fy,
            fr,
            ft,
            lambda: (phi.iter().map(|c| c.norm_sqr()).sum::<f64>() / 2.0).sqrt(),
        }
    }

    /// Largest coefficient modulus of `Φ₁² + Φ₂² + Φ₃²`.
    pub fn null_residual(&self) -> f64 {
        let sum = &(&(&self.phi[0] * &self.phi[0]) + &(&self.phi[1] * &self.phi[1])) + &(&self.phi[2] * &self.phi[2]);
        sum.max_abs_coeff()
    }

    /// `max_i |Re ∫_0^z Φ_i − (Re of the exact primitive)|` with the `n`-point Gauss rule
    /// applied to `t ↦ z Φ(tz)` on `[0, 1]`.
    pub fn primitive_quadrature_gap(&self, z: Complex64, rule: &GaussLegendre) -> f64 {
        let quad = rule.integrate_vec(0.0, 1.0, |t| {
            let phi = self.phi(z * t);
            [(z * phi[0]).re, (z * phi[1]).re, (z * phi[2]).re]
        });
        let exact = self.eval(z);
        (0..3).map(|i| (quad[i] + self.base[i] - exact[i]).abs()).fold(0.0, f64::max)
    }

    /// `max ‖F‖` over a 4096-point boundary grid and the `128 × 128` square grid
    /// clipped to the closed disk. Cached.
    pub fn ball_sup(&self) -> f64 {
        *self.ball_sup.get_or_init(|| {
            let mut sup: f64 = 0.0;
            for z in boundary_grid(tolerance::BOUNDARY_GRID).chain(interior_grid(tolerance::INTERIOR_GRID)) {
                sup = sup.max(norm3(&self.eval(z)));
            }
            sup
        })
    }

    /// Whether `|q| < 1` on the boundary grid (hence on the closed disk).
    pub fn half_sphere(&self) -> bool {
        boundary_grid(tolerance::BOUNDARY_GRID).all(|z| self.q.eval(z).norm() < 1.0)
    }

    /// Winding number of `p` around 0 along the boundary grid; zero certifies
    /// that `p` has no zeros in the disk, i.e. `F` is an immersion.
    pub fn p_winding_number(&self) -> Result<i64> {
        let n = tolerance::BOUNDARY_GRID;
        let values: Vec<Complex64> = boundary_grid(n).map(|z| self.p.eval(z)).collect();
        if values.iter().any(|v| v.norm() == 0.0) {
            return Err(Error::Precondition("p vanishes on the boundary".into()));
        }
        let total: f64 = (0..n).map(|k| (values[(k + 1) % n] / values[k]).arg()).sum();
        Ok((total / TAU).round() as i64)
    }
}

impl fmt::Display for WeierstrassDisk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |poly: &Poly| poly.coeffs().iter().map(|c| format_complex(*c)).collect::<Vec<_>>().join(", ");
        write!(f, "weierstrass(p=[{}], q=[{}]", list(&self.p), list(&self.q))?;
        if self.base != [0.0; 3] {
            write!(f, ", base=[{:?}, {:?}, {:?}]", self.base[0], self.base[1], self.base[2])?;
        }
        write!(f, ")")
    }
}

impl PartialEq for WeierstrassDisk {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.q == other.q && self.base == other.base
    }
}

/// `e^{2πik/n}`, `k = 0..n`.
pub fn boundary_grid(n: usize) -> impl Iterator<Item = Complex64> {
    (0..n).map(move |k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
}

/// Points of the `side × side` grid on `[-1, 1]²` that lie in the closed disk.
pub fn interior_grid(side: usize) -> impl Iterator<Item = Complex64> {
    let step = 2.0 / (side as f64 - 1.0);
    (0..side)
        .flat_map(move |i| (0..side).map(move |j| Complex64::new(-1.0 + step * i as f64, -1.0 + step * j as f64)))
        .filter(|z| z.norm() <= 1.0)
}
