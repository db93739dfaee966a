use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::ball::{BallAutomorphism, CVec};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::tolerance;

/// Slack on `|z| ≤ 1` so that `e^{iθ}` computed in floating point counts as a boundary point.
const CLOSED_DISK_SLACK: f64 = 1e-12;

const UNIMODULAR_ROUNDING: f64 = 8.0 * f64::EPSILON;

/// Expression tree for a holomorphic map `D → C^m`.
///
/// Scalar nodes have dimension 1. `Mul` multiplies a scalar node into a node
/// of any dimension and `Embed` turns a scalar node into a vector along a
/// fixed direction.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// The coordinate `z`.
    Z,
    Const(CVec),
    /// One polynomial per output coordinate.
    Poly(Vec<Poly>),
    /// `b_c(z) = (z + c)/(1 + conj(c) z)`, `|c| < 1`.
    Blaschke(Complex64),
    Mul(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Smul(Complex64, Box<Expr>),
    /// Scalar node times a constant vector.
    Embed(Box<Expr>, CVec),
    /// Post-composition with a ball automorphism.
    Compose(BallAutomorphism, Box<Expr>),
}

impl Expr {
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn smul(k: Complex64, e: Expr) -> Expr {
        Expr::Smul(k, Box::new(e))
    }

    pub fn embed(e: Expr, u: CVec) -> Expr {
        Expr::Embed(Box::new(e), u)
    }

    pub fn compose(aut: BallAutomorphism, e: Expr) -> Expr {
        Expr::Compose(aut, Box::new(e))
    }

    /// Output dimension, validating every node on the way.
    pub fn dim(&self) -> Result<usize> {
        match self {
            Expr::Z | Expr::Blaschke(_) => {
                if let Expr::Blaschke(c) = self {
                    if !(c.norm() < 1.0) {
                        return Err(Error::InvalidParameter(format!("Blaschke parameter |c| = {} ≥ 1", c.norm())));
                    }
                }
                Ok(1)
            }
            Expr::Const(v) => Ok(v.dim()),
            Expr::Poly(coords) => {
                if coords.is_empty() {
                    return Err(Error::InvalidParameter("polynomial map with no coordinates".into()));
                }
                Ok(coords.len())
            }
            Expr::Mul(a, b) => {
                let da = a.dim()?;
                if da != 1 {
                    return Err(Error::DimensionMismatch { expected: 1, got: da });
                }
                b.dim()
            }
            Expr::Add(a, b) => {
                let (da, db) = (a.dim()?, b.dim()?);
                if da != db {
                    return Err(Error::DimensionMismatch { expected: da, got: db });
                }
                Ok(da)
            }
            Expr::Smul(_, e) => e.dim(),
            Expr::Embed(e, u) => {
                let de = e.dim()?;
                if de != 1 {
                    return Err(Error::DimensionMismatch { expected: 1, got: de });
                }
                Ok(u.dim())
            }
            Expr::Compose(aut, e) => {
                let de = e.dim()?;
                if de != aut.dim() {
                    return Err(Error::DimensionMismatch { expected: aut.dim(), got: de });
                }
                Ok(de)
            }
        }
    }

    /// Value and complex derivative at `z`.
    fn jet(&self, z: Complex64) -> Result<(CVec, CVec)> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match self {
            Expr::Z => (CVec::scalar(z), CVec::scalar(one)),
            Expr::Const(v) => (v.clone(), CVec::zeros(v.dim())),
            Expr::Poly(coords) => {
                let (vals, ders): (Vec<_>, Vec<_>) = coords.iter().map(|p| p.eval_with_derivative(z)).unzip();
                (CVec::new(vals), CVec::new(ders))
            }
            Expr::Blaschke(c) => {
                let den = one + c.conj() * z;
                if den.norm() <= f64::EPSILON {
                    return Err(Error::SingularDenominator("Blaschke factor"));
                }
                let val = (z + c) / den;
                let der = (1.0 - c.norm_sqr()) / (den * den);
                (CVec::scalar(val), CVec::scalar(der))
            }
            Expr::Mul(a, b) => {
                let (va, da) = a.jet(z)?;
                let (vb, db) = b.jet(z)?;
                let (s, ds) = (va[0], da[0]);
                (vb.scale(s), &vb.scale(ds) + &db.scale(s))
            }
            Expr::Add(a, b) => {
                let (va, da) = a.jet(z)?;
                let (vb, db) = b.jet(z)?;
                (&va + &vb, &da + &db)
            }
            Expr::Smul(k, e) => {
                let (v, d) = e.jet(z)?;
                (v.scale(*k), d.scale(*k))
            }
            Expr::Embed(e, u) => {
                let (v, d) = e.jet(z)?;
                (u.scale(v[0]), u.scale(d[0]))
            }
            Expr::Compose(aut, e) => {
                let (v, d) = e.jet(z)?;
                let dphi = aut.differential(&v, &d)?;
                (aut.apply(&v)?, dphi)
            }
        })
    }
}

impl Expr {
    /// `(f(z), 1 − |f(z)|²)` for scalar trees built from `z`, Blaschke factors,
    /// products and scalar multiples, with the defect assembled from
    /// `1 − |b_c(z)|² = (1 − |c|²)(1 − |z|²)/|1 + conj(c) z|²` and
    /// `1 − |gh|² = (1 − |g|²) + |g|²(1 − |h|²)` so that nothing cancels.
    /// `None` for any other node.
    fn inner_defect(&self, z: Complex64) -> Option<(Complex64, f64)> {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Expr::Z => Some((z, (1.0 - z.norm()) * (1.0 + z.norm()))),
            Expr::Blaschke(c) => {
                let den = one + c.conj() * z;
                let zd = (1.0 - z.norm()) * (1.0 + z.norm());
                let cd = (1.0 - c.norm()) * (1.0 + c.norm());
                Some(((z + c) / den, cd * zd / den.norm_sqr()))
            }
            Expr::Mul(a, b) => {
                let (va, da) = a.inner_defect(z)?;
                let (vb, db) = b.inner_defect(z)?;
                Some((va * vb, da + va.norm_sqr() * db))
            }
            Expr::Smul(k, e) => {
                let (v, d) = e.inner_defect(z)?;
                // a rotation stored in floating point is off the unit circle by rounding only
                let gap = 1.0 - k.norm_sqr();
                let gap = if gap.abs() <= UNIMODULAR_ROUNDING { 0.0 } else { gap };
                Some((k * v, gap + k.norm_sqr() * d))
            }
            _ => None,
        }
    }
}

/// A holomorphic map `D → C^m` given by an expression tree.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloDisk {
    expr: Expr,
    dim: usize,
}

impl HoloDisk {
    /// Validates the tree structurally (dimensions, parameter ranges).
    pub fn new(expr: Expr) -> Result<Self> {
        let dim = expr.dim()?;
        Ok(HoloDisk { expr, dim })
    }

    /// Like [`HoloDisk::new`], additionally requiring the boundary-grid certificate
    /// `max ‖F(e^{iθ})‖ ≤ 1 + 1e-10` over [`tolerance::BOUNDARY_GRID`] points.
    pub fn certified(expr: Expr) -> Result<Self> {
        let disk = HoloDisk::new(expr)?;
        let sup = disk.boundary_sup(tolerance::BOUNDARY_GRID)?;
        if sup > 1.0 + tolerance::MARGIN {
            return Err(Error::Precondition(format!("map leaves the unit ball: boundary sup {sup}")));
        }
        Ok(disk)
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_z(z: Complex64) -> Result<()> {
        if z.norm() > 1.0 + CLOSED_DISK_SLACK {
            return Err(Error::OutsideClosedBall(z.norm()));
        }
        Ok(())
    }

    pub fn eval(&self, z: Complex64) -> Result<CVec> {
        Self::check_z(z)?;
        Ok(self.expr.jet(z)?.0)
    }

    pub fn deriv(&self, z: Complex64) -> Result<CVec> {
        Self::check_z(z)?;
        Ok(self.expr.jet(z)?.1)
    }

    /// `(F(z), F'(z))` in one pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(CVec, CVec)> {
        Self::check_z(z)?;
        self.expr.jet(z)
    }

    /// `1 − ‖F(z)‖²`, free of cancellation when the tree is a finite
    /// Blaschke product up to a scalar factor.
    pub fn unit_defect(&self, z: Complex64) -> Result<f64> {
        Self::check_z(z)?;
        match self.expr.inner_defect(z) {
            Some((_, d)) => Ok(d),
            None => Ok(1.0 - self.eval(z)?.norm_sqr()),
        }
    }

    /// `max_k ‖F(e^{2πik/n})‖`.
    pub fn boundary_sup(&self, n: usize) -> Result<f64> {
        let mut sup: f64 = 0.0;
        for k in 0..n {
            let zeta = Complex64::from_polar(1.0, TAU * k as f64 / n as f64);
            sup = sup.max(self.eval(zeta)?.norm());
        }
        Ok(sup)
    }

    /// Largest relative gap between `deriv` and the central difference
    /// `(F(z + h) − F(z − h)) / 2h` at an interior point.
    pub fn finite_difference_gap(&self, z: Complex64, h: f64) -> Result<f64> {
        let d = self.deriv(z)?;
        let hc = Complex64::new(h, 0.0);
        let fd = (&self.eval(z + hc)? - &self.eval(z - hc)?).scale_re(0.5 / h);
        Ok((&fd - &d).norm() / d.norm().max(1.0))
    }
}

impl fmt::Display for HoloDisk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.expr)
    }
}

/// Point on the unit circle, tagged with whether `‖F(ζ)‖ = 1` for a given disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    zeta: Complex64,
    contact: bool,
}

impl BoundaryPoint {
    pub fn new(zeta: Complex64) -> Result<Self> {
        if (zeta.norm() - 1.0).abs() > 1e-14 {
            return Err(Error::InvalidParameter(format!("boundary point has modulus {}", zeta.norm())));
        }
        Ok(BoundaryPoint { zeta, contact: false })
    }

    pub fn at_angle(theta: f64) -> Self {
        BoundaryPoint { zeta: Complex64::from_polar(1.0, theta), contact: false }
    }

    pub fn one() -> Self {
        BoundaryPoint { zeta: Complex64::new(1.0, 0.0), contact: false }
    }

    /// Tags the point with `|‖F(ζ)‖ − 1| ≤ 1e-10`.
    pub fn for_disk(self, disk: &HoloDisk) -> Result<Self> {
        let n = disk.eval(self.zeta)?.norm();
        Ok(BoundaryPoint { contact: (n - 1.0).abs() <= tolerance::BOUNDARY_CONTACT, ..self })
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn contact(&self) -> bool {
        self.contact
    }
}

/// `z · u`: the affine disk along the unit vector `u`.
pub fn affine_disk(u: CVec) -> Expr {
    Expr::embed(Expr::Z, u)
}

/// `z² · u`.
pub fn z_squared(u: CVec) -> Expr {
    Expr::embed(Expr::mul(Expr::Z, Expr::Z), u)
}

/// `z · b_c(z) · u`.
pub fn z_times_blaschke(c: Complex64, u: CVec) -> Expr {
    Expr::embed(Expr::mul(Expr::Z, Expr::Blaschke(c)), u)
}

/// Product of Blaschke factors `Π b_{c_k}(z)` (the constant 1 for an empty list).
pub fn blaschke_product(zeros: &[Complex64]) -> Expr {
    let mut iter = zeros.iter();
    match iter.next() {
        None => Expr::Const(CVec::scalar(Complex64::new(1.0, 0.0))),
        Some(&c) => iter.fold(Expr::Blaschke(c), |acc, &c| Expr::mul(Expr::Blaschke(c), acc)),
    }
}
