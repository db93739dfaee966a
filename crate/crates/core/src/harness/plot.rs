use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::holo::bounds::boundary_origin_terms;
use crate::holo::{extremal_family_1d, BoundaryPoint};
use crate::minimal::checks::distance_decreasing_terms;
use crate::minimal::WeierstrassDisk;
use crate::search::SharpnessReport;

fn writer(dir: &Path, name: &str) -> Result<(csv::Writer<std::fs::File>, PathBuf)> {
    let path = dir.join(name);
    let file = std::fs::File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok((csv::Writer::from_writer(file), path))
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Parameter grid: the origin plus 5 rings of 8 spokes.
fn parameter_grid() -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for i in 1..=5 {
        for k in 0..8 {
            pts.push(Complex64::from_polar(0.16 * i as f64, TAU * k as f64 / 8.0));
        }
    }
    pts
}

fn distance_grid(dir: &Path, name: &str, surface: &WeierstrassDisk) -> Result<PathBuf> {
    let (mut w, path) = writer(dir, name)?;
    w.write_record(["z_re", "z_im", "w_re", "w_im", "on_diameter", "poincare", "cayley_klein", "margin"])?;
    let grid = parameter_grid();
    for (i, &z1) in grid.iter().enumerate() {
        for &z2 in &grid[i + 1..] {
            let (dk, dp) = distance_decreasing_terms(surface, z1, z2)?;
            let on_diameter = (z1.conj() * z2).im.abs() < 1e-12;
            w.write_record([
                num(z1.re),
                num(z1.im),
                num(z2.re),
                num(z2.im),
                on_diameter.to_string(),
                num(dp),
                num(dk),
                num(dp - dk),
            ])?;
        }
    }
    w.flush()?;
    Ok(path)
}

/// Writes plotting CSVs into `dir`:
///
/// - `extremal_family.csv`: `a,lhs,rhs,margin` of the boundary bound at `ζ = 1` for `a = 0, 0.01, …, 0.99`;
/// - `distance_planar.csv`, `distance_enneper.csv`: distance-decreasing margins over all pairs of a
///   polar parameter grid, flagged by whether the pair lies on a common diameter;
/// - `search_traces.csv`: `search,restart,iteration,best_value` for every restart.
pub fn emit_plot_data(searches: &[(String, SharpnessReport)], dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();

    let (mut w, path) = writer(dir, "extremal_family.csv")?;
    w.write_record(["a", "lhs", "rhs", "margin"])?;
    for k in 0..100 {
        let a = k as f64 / 100.0;
        let f = extremal_family_1d(a)?;
        let d0 = f.deriv(Complex64::new(0.0, 0.0))?.norm();
        let (lhs, rhs) = boundary_origin_terms(&f, d0, &BoundaryPoint::one())?;
        w.write_record([num(a), num(lhs), num(rhs), num(lhs - rhs)])?;
    }
    w.flush()?;
    files.push(path);

    files.push(distance_grid(dir, "distance_planar.csv", &WeierstrassDisk::planar(Complex64::new(0.0, 0.0), 1.0))?);
    files.push(distance_grid(dir, "distance_enneper.csv", &WeierstrassDisk::enneper().scaled_into_ball())?);

    let (mut w, path) = writer(dir, "search_traces.csv")?;
    w.write_record(["search", "restart", "iteration", "best_value"])?;
    for (name, rep) in searches {
        for run in &rep.runs {
            for (it, v) in run.result.trace.iter().enumerate() {
                w.write_record([name.clone(), run.index.to_string(), (it + 1).to_string(), num(*v)])?;
            }
        }
    }
    w.flush()?;
    files.push(path);
    Ok(files)
}
