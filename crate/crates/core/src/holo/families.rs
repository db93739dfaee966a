use num_complex::Complex64;

use super::bounds::boundary_bound_origin;
use super::disk::{blaschke_product, BoundaryPoint, Expr, HoloDisk};
use crate::error::{Error, Result};
use crate::report::InequalityReport;

/// `f(z) = z (z + a)/(1 + a z)` for `a ∈ [0, 1)`; `a = 0` gives `z²`.
pub fn extremal_family_1d(a: f64) -> Result<HoloDisk> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidParameter(format!("extremal family parameter {a} outside [0, 1)")));
    }
    HoloDisk::new(Expr::mul(Expr::Z, Expr::Blaschke(Complex64::new(a, 0.0))))
}

/// `f(z) = λ z b_c(z)` with the unimodular `λ = conj(b_c(1))`, so that `f(1) = 1`.
///
/// For real `c ∈ [0, 1)` this is [`extremal_family_1d`].
pub fn rotated_extremal(c: Complex64) -> Result<HoloDisk> {
    if !(c.norm() < 1.0) {
        return Err(Error::InvalidParameter(format!("|c| = {} ≥ 1", c.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    let b1 = (one + c) / (one + c.conj());
    HoloDisk::new(Expr::smul(b1.conj(), Expr::mul(Expr::Z, Expr::Blaschke(c))))
}

/// Boundary bound at `ζ = 1` on [`rotated_extremal`]: zero margin exactly for
/// `arg c = 0`, strictly positive otherwise.
pub fn nonreal_parameter_strictness(c: Complex64) -> Result<InequalityReport> {
    if c.norm() == 0.0 {
        return Err(Error::InvalidParameter("strictness parameter must be nonzero".into()));
    }
    let f = rotated_extremal(c)?;
    boundary_bound_origin(&f, &BoundaryPoint::one())
}

/// Finite Blaschke product `Π b_{c_k}` multiplied by the unimodular constant that makes it fix 1.
pub fn blaschke_product_fixing_one(zeros: &[Complex64]) -> Result<HoloDisk> {
    if zeros.is_empty() {
        return Err(Error::InvalidParameter("empty Blaschke product".into()));
    }
    let product = HoloDisk::new(blaschke_product(zeros))?;
    let at_one = product.eval(Complex64::new(1.0, 0.0))?[0];
    HoloDisk::new(Expr::smul(at_one.conj() / at_one.norm(), product.expr().clone()))
}
