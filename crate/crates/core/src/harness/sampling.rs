use num_complex::Complex64;
use rand::Rng;

use crate::ball::CVec;

/// Uniform point of the closed disk of radius `radius`.
pub fn disk_point<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Uniform point of the unit circle.
pub fn circle_point<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Uniform unit vector of `C^m` (rejection from the cube of `R^{2m}`).
pub fn unit_vector<R: Rng>(rng: &mut R, m: usize) -> CVec {
    loop {
        let v = CVec::new((0..m).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect());
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v.scale_re(1.0 / n);
        }
    }
}

/// Uniform point of the ball of radius `radius` in `C^m`.
pub fn ball_point<R: Rng>(rng: &mut R, m: usize, radius: f64) -> CVec {
    let rho = radius * rng.gen::<f64>().powf(1.0 / (2 * m) as f64);
    unit_vector(rng, m).scale_re(rho)
}
