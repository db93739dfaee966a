use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vector in `C^m` with the Hermitian inner product `⟨x, y⟩ = Σ x_j conj(y_j)`.
///
/// Real vectors in `R^n` are represented with zero imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CVec(Vec<Complex64>);

impl CVec {
    pub fn new(entries: Vec<Complex64>) -> Self {
        assert!(!entries.is_empty(), "CVec must have dimension at least 1");
        CVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        CVec::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// Standard basis vector `e_k` (zero-based index).
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = CVec::zeros(dim);
        v.0[k] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_real(entries: &[f64]) -> Self {
        CVec::new(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn scalar(z: Complex64) -> Self {
        CVec::new(vec![z])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.0.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real parts, for vectors living in `R^n`.
    pub fn re(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.re).collect()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    pub fn scale(&self, k: Complex64) -> CVec {
        CVec(self.0.iter().map(|z| z * k).collect())
    }

    pub fn scale_re(&self, k: f64) -> CVec {
        CVec(self.0.iter().map(|z| z * k).collect())
    }

    /// Unit vector in the direction of `self`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<CVec> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale_re(1.0 / n))
    }

    fn check_dim(&self, other: &CVec) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CVec) -> Result<CVec> {
        self.check_dim(other)?;
        Ok(CVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &CVec) -> Result<CVec> {
        self.check_dim(other)?;
        Ok(CVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

/// Hermitian inner product `Σ x_j conj(y_j)`.
pub fn inner(x: &CVec, y: &CVec) -> Result<Complex64> {
    x.check_dim(y)?;
    Ok(x.0.iter().zip(&y.0).map(|(a, b)| a * b.conj()).sum())
}

/// Squared norm of `x ∧ y`, i.e. `‖x‖²‖y‖² − |⟨x,y⟩|²` computed without cancellation
/// when `y` is close to a multiple of `x`.
pub(crate) fn gram_defect(x: &CVec, y: &CVec) -> f64 {
    let nx = x.norm_sqr();
    if nx == 0.0 {
        return 0.0;
    }
    // project y onto x^⊥ and measure what is left
    let c = inner(y, x).expect("same dimension") / nx;
    let rest: f64 = y.0.iter().zip(&x.0).map(|(yj, xj)| (yj - c * xj).norm_sqr()).sum();
    nx * rest
}

impl Index<usize> for CVec {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

// Operator impls panic on dimension mismatch; use try_add/try_sub at API boundaries.
impl Add for &CVec {
    type Output = CVec;
    fn add(self, rhs: &CVec) -> CVec {
        self.try_add(rhs).expect("dimension mismatch in CVec addition")
    }
}

impl Sub for &CVec {
    type Output = CVec;
    fn sub(self, rhs: &CVec) -> CVec {
        self.try_sub(rhs).expect("dimension mismatch in CVec subtraction")
    }
}

impl Neg for &CVec {
    type Output = CVec;
    fn neg(self) -> CVec {
        CVec(self.0.iter().map(|z| -z).collect())
    }
}

impl Mul<Complex64> for &CVec {
    type Output = CVec;
    fn mul(self, k: Complex64) -> CVec {
        self.scale(k)
    }
}

impl Mul<f64> for &CVec {
    type Output = CVec;
    fn mul(self, k: f64) -> CVec {
        self.scale_re(k)
    }
}

impl From<Vec<Complex64>> for CVec {
    fn from(v: Vec<Complex64>) -> Self {
        CVec::new(v)
    }
}

impl fmt::Display for CVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, z) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", crate::holo::notation::format_complex(*z))?;
        }
        write!(f, "]")
    }
}
