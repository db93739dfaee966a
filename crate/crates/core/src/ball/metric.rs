use num_complex::Complex64;

use super::cvec::{inner, CVec};
use crate::error::{Error, Result};

/// Interior point of the unit ball, as used by the distance functions.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricPoint {
    coords: CVec,
}

impl MetricPoint {
    pub fn new(coords: CVec) -> Result<Self> {
        let n = coords.norm();
        if !(n < 1.0) {
            return Err(Error::NotInterior(n));
        }
        Ok(MetricPoint { coords })
    }

    pub fn real(coords: &[f64]) -> Result<Self> {
        MetricPoint::new(CVec::from_real(coords))
    }

    pub fn coords(&self) -> &CVec {
        &self.coords
    }

    pub fn is_inside(&self) -> bool {
        self.coords.norm() < 1.0
    }
}

/// Cayley–Klein distance on the real unit ball,
/// `arcosh(|1 − ⟨z,w⟩| / √((1 − ‖z‖²)(1 − ‖w‖²)))`.
///
/// Evaluated as `asinh(√N / √((1 − ‖z‖²)(1 − ‖w‖²)))` with
/// `N = ‖w − z‖²(1 − ‖z‖²) + |⟨w − z, z⟩|²`, which equals
/// `|1 − ⟨z,w⟩|² − (1 − ‖z‖²)(1 − ‖w‖²)` and has no cancellation near the diagonal.
pub fn cayley_klein_dist(z: &MetricPoint, w: &MetricPoint) -> Result<f64> {
    if !(z.coords.is_real() && w.coords.is_real()) {
        return Err(Error::InvalidParameter(
            "Cayley–Klein distance is defined on the real ball".into(),
        ));
    }
    // canonical argument order keeps the result bit-for-bit symmetric
    let (z, w) = if lex_greater(&z.coords, &w.coords) { (w, z) } else { (z, w) };
    let (z, w) = (&z.coords, &w.coords);
    let d = w.try_sub(z)?;
    let cz = 1.0 - z.norm_sqr();
    let cw = 1.0 - w.norm_sqr();
    let num = d.norm_sqr() * cz + inner(&d, z)?.norm_sqr();
    Ok((num / (cz * cw)).sqrt().asinh())
}

/// The same distance in its printed `arcosh` form, kept as an independent route.
pub fn cayley_klein_dist_arcosh(z: &MetricPoint, w: &MetricPoint) -> Result<f64> {
    let (z, w) = (&z.coords, &w.coords);
    let num = (Complex64::new(1.0, 0.0) - inner(z, w)?).norm();
    let den = ((1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr())).sqrt();
    Ok((num / den).max(1.0).acosh())
}

fn lex_greater(x: &CVec, y: &CVec) -> bool {
    for (a, b) in x.iter().zip(y.iter()) {
        match a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)) {
            std::cmp::Ordering::Greater => return true,
            std::cmp::Ordering::Less => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    false
}

/// Distance of the metric `|dz| / (1 − |z|²)` on the unit disk:
/// `artanh(|z − w| / |1 − conj(z) w|)`, evaluated as
/// `asinh(|z − w| / √((1 − |z|²)(1 − |w|²)))`.
pub fn poincare_dist(z: Complex64, w: Complex64) -> Result<f64> {
    for p in [z, w] {
        if !(p.norm() < 1.0) {
            return Err(Error::NotInterior(p.norm()));
        }
    }
    let den = ((1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr())).sqrt();
    Ok(((z - w).norm() / den).asinh())
}

/// Pseudo-hyperbolic distance `|z − w| / |1 − conj(z) w|` on the disk.
pub fn pseudo_hyperbolic(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm() / (Complex64::new(1.0, 0.0) - z.conj() * w).norm()
}

/// Disk automorphism `b_c(z) = (z + c) / (1 + conj(c) z)`.
pub fn disk_automorphism(c: Complex64, z: Complex64) -> Complex64 {
    (z + c) / (Complex64::new(1.0, 0.0) + c.conj() * z)
}
