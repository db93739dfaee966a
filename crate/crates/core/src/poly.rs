//! Dense complex polynomials, coefficients stored lowest degree first.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly(Vec<Complex64>);

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Poly(coeffs)
    }

    pub fn constant(c: Complex64) -> Self {
        Poly(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Poly(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    /// Index of the highest stored coefficient (trailing zeros included).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.0.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `(p(z), p'(z))` by a single Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for c in self.0.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::constant(Complex64::new(0.0, 0.0));
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect())
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> Poly {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        out.extend(self.0.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)));
        Poly(out)
    }

    pub fn scale(&self, k: Complex64) -> Poly {
        Poly(self.0.iter().map(|c| c * k).collect())
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let zero = Complex64::new(0.0, 0.0);
        Poly(
            (0..n)
                .map(|k| self.0.get(k).copied().unwrap_or(zero) + rhs.0.get(k).copied().unwrap_or(zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![Complex64::new(0.0, 0.0); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn arithmetic() {
        let p = Poly::new(vec![c(1.0, 0.0), c(0.0, 2.0)]); // 1 + 2i z
        let q = &p * &p; // 1 + 4i z − 4 z²
        assert_eq!(q.coeffs(), &[c(1.0, 0.0), c(0.0, 4.0), c(-4.0, 0.0)]);
        assert_eq!((&q - &q).max_abs_coeff(), 0.0);
        assert_eq!(q.derivative().coeffs(), &[c(0.0, 4.0), c(-8.0, 0.0)]);
        assert_eq!(q.integral().derivative(), q);
        assert_eq!(Poly::z().eval(c(0.3, 0.4)), c(0.3, 0.4));
    }

    proptest! {
        #[test]
        fn horner_derivative_matches_derivative_poly(
            coeffs in proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..8),
            x in -1.0f64..1.0, y in -1.0f64..1.0,
        ) {
            let p = Poly::new(coeffs.into_iter().map(|(a, b)| c(a, b)).collect());
            let z = c(x, y);
            let (v, dv) = p.eval_with_derivative(z);
            prop_assert!((v - p.eval(z)).norm() < 1e-12);
            prop_assert!((dv - p.derivative().eval(z)).norm() < 1e-12);
        }
    }
}
