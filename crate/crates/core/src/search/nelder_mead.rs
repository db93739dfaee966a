use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadOptions {
    /// Box `[lo, hi]` per coordinate; points are mirrored back inside.
    pub bounds: Option<Vec<(f64, f64)>>,
    /// Initial simplex edge along each axis.
    pub initial_step: f64,
    pub max_iterations: usize,
    /// Stop when the largest vertex distance from the best vertex drops below this.
    pub x_tolerance: f64,
    /// Stop when `f_worst − f_best` drops below this.
    pub f_tolerance: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions { bounds: None, initial_step: 0.1, max_iterations: 10_000, x_tolerance: 1e-9, f_tolerance: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    SimplexDiameter,
    ValueSpread,
    IterationLimit,
}

/// Vertices with their values, kept sorted best first.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexState {
    pub vertices: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    pub iteration: usize,
}

impl SimplexState {
    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&i, &j| self.values[i].total_cmp(&self.values[j]).then(i.cmp(&j)));
        self.vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        self.values = order.iter().map(|&i| self.values[i]).collect();
    }

    pub fn best(&self) -> (&[f64], f64) {
        (&self.vertices[0], self.values[0])
    }

    fn diameter(&self) -> f64 {
        let best = &self.vertices[0];
        self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NelderMeadResult {
    pub xmin: Vec<f64>,
    pub fmin: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub stop: StopReason,
    /// Best value after each iteration.
    pub trace: Vec<f64>,
    /// Smallest value seen at any evaluated point.
    pub min_evaluated: f64,
}

fn mirror(x: f64, lo: f64, hi: f64) -> f64 {
    if (lo..=hi).contains(&x) {
        return x;
    }
    let width = hi - lo;
    if width == 0.0 {
        return lo;
    }
    let period = 2.0 * width;
    let t = (x - lo).rem_euclid(period);
    if t <= width { lo + t } else { hi - (t - width) }
}

/// Mirrors `x` coordinate-wise into the box.
pub fn reflect_into(x: &mut [f64], bounds: &[(f64, f64)]) {
    for (xi, &(lo, hi)) in x.iter_mut().zip(bounds) {
        *xi = mirror(*xi, lo, hi);
    }
}

/// Minimizes `objective` from `x0` with the standard coefficients
/// (reflection 1, expansion 2, contraction ½, shrink ½).
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut objective: F, x0: &[f64], options: &NelderMeadOptions) -> Result<NelderMeadResult> {
    let n = x0.len();
    if n == 0 {
        return Err(Error::InvalidParameter("empty parameter vector".into()));
    }
    if let Some(b) = &options.bounds {
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: b.len() });
        }
        if b.iter().any(|(lo, hi)| !(lo <= hi)) {
            return Err(Error::InvalidParameter("bounds need lo ≤ hi".into()));
        }
    }
    let project = |mut x: Vec<f64>| {
        if let Some(b) = &options.bounds {
            reflect_into(&mut x, b);
        }
        x
    };
    let mut evaluations = 0usize;
    let mut min_evaluated = f64::INFINITY;
    let mut eval = |x: &[f64]| {
        evaluations += 1;
        let v = objective(x);
        let v = if v.is_nan() { f64::INFINITY } else { v };
        min_evaluated = min_evaluated.min(v);
        v
    };

    let start = project(x0.to_vec());
    let f0 = eval(&start);
    if !f0.is_finite() {
        return Err(Error::InvalidParameter(format!("objective is not finite at x0 ({f0})")));
    }
    let mut vertices = vec![start.clone()];
    let mut values = vec![f0];
    for i in 0..n {
        let mut v = start.clone();
        v[i] += options.initial_step;
        if let Some(b) = &options.bounds {
            if v[i] > b[i].1 {
                v[i] = start[i] - options.initial_step;
            }
        }
        let v = project(v);
        values.push(eval(&v));
        vertices.push(v);
    }
    let mut s = SimplexState { vertices, values, iteration: 0 };
    s.sort();
    let mut trace = Vec::new();

    let stop = loop {
        if s.diameter() < options.x_tolerance {
            break StopReason::SimplexDiameter;
        }
        if s.values[n] - s.values[0] < options.f_tolerance {
            break StopReason::ValueSpread;
        }
        if s.iteration >= options.max_iterations {
            break StopReason::IterationLimit;
        }
        s.iteration += 1;

        let mut centroid = vec![0.0; n];
        for v in &s.vertices[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let along = |t: f64, worst: &[f64]| -> Vec<f64> {
            centroid.iter().zip(worst).map(|(c, w)| c + t * (c - w)).collect()
        };
        let worst = s.vertices[n].clone();
        let xr = project(along(1.0, &worst));
        let fr = eval(&xr);
        if fr < s.values[0] {
            let xe = project(along(2.0, &worst));
            let fe = eval(&xe);
            if fe < fr {
                s.vertices[n] = xe;
                s.values[n] = fe;
            } else {
                s.vertices[n] = xr;
                s.values[n] = fr;
            }
        } else if fr < s.values[n - 1] {
            s.vertices[n] = xr;
            s.values[n] = fr;
        } else {
            // outside contraction when the reflection improved on the worst vertex
            let t = if fr < s.values[n] { 0.5 } else { -0.5 };
            let xc = project(along(t, &worst));
            let fc = eval(&xc);
            if fc < fr.min(s.values[n]) {
                s.vertices[n] = xc;
                s.values[n] = fc;
            } else {
                let best = s.vertices[0].clone();
                for i in 1..=n {
                    let v: Vec<f64> = best.iter().zip(&s.vertices[i]).map(|(b, x)| b + 0.5 * (x - b)).collect();
                    let v = project(v);
                    s.values[i] = eval(&v);
                    s.vertices[i] = v;
                }
            }
        }
        s.sort();
        trace.push(s.values[0]);
    };

    let (xmin, fmin) = s.best();
    Ok(NelderMeadResult {
        xmin: xmin.to_vec(),
        fmin,
        iterations: s.iteration,
        evaluations,
        stop,
        trace,
        min_evaluated,
    })
}
