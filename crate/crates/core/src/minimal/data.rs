//! Plain-text Weierstrass data files and CSV surface samples.
//!
//! ```text
//! # comments start with '#'
//! [p]
//! 1 0
//! [q]
//! 0 0
//! 1 0
//! [flags]
//! half_sphere = true
//! base = 0 0 0.25
//! ```
//!
//! Each coefficient line is `re im`, lowest degree first. `half_sphere = true`
//! is verified on load.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::weierstrass::WeierstrassDisk;
use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    P,
    Q,
    Flags,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset: line, message: message.into() }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| parse_err(line, format!("bad number {tok:?}")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("non-finite number {tok:?}")));
    }
    Ok(v)
}

/// Parses a data file. Error offsets are 1-based line numbers.
pub fn parse_weierstrass(src: &str) -> Result<WeierstrassDisk> {
    let mut section = Section::None;
    let (mut p, mut q) = (Vec::new(), Vec::new());
    let mut base = [0.0; 3];
    let mut half_sphere = None;
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        section = match line {
            "[p]" => Section::P,
            "[q]" => Section::Q,
            "[flags]" => Section::Flags,
            l if l.starts_with('[') => return Err(parse_err(line_no, format!("unknown section {l}"))),
            _ => section,
        };
        if line.starts_with('[') {
            continue;
        }
        match section {
            Section::None => return Err(parse_err(line_no, "data before the first section")),
            Section::P | Section::Q => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(parse_err(line_no, "expected \"re im\""));
                }
                let c = Complex64::new(parse_f64(toks[0], line_no)?, parse_f64(toks[1], line_no)?);
                if section == Section::P { &mut p } else { &mut q }.push(c);
            }
            Section::Flags => {
                let (key, value) = line.split_once('=').ok_or_else(|| parse_err(line_no, "expected key = value"))?;
                match key.trim() {
                    "half_sphere" => {
                        half_sphere = Some(
                            value.trim().parse::<bool>().map_err(|_| parse_err(line_no, "half_sphere must be true or false"))?,
                        )
                    }
                    "base" => {
                        let vals = value
                            .split_whitespace()
                            .map(|t| parse_f64(t, line_no))
                            .collect::<Result<Vec<_>>>()?;
                        base = vals.try_into().map_err(|_| parse_err(line_no, "base needs three coordinates"))?;
                    }
                    other => return Err(parse_err(line_no, format!("unknown flag {other:?}"))),
                }
            }
        }
    }
    if p.is_empty() || q.is_empty() {
        return Err(parse_err(0, "both [p] and [q] need at least one coefficient"));
    }
    let w = WeierstrassDisk::new(Poly::new(p), Poly::new(q)).with_base(base);
    if half_sphere == Some(true) && !w.half_sphere() {
        return Err(Error::Precondition("half_sphere flag set but |q| ≥ 1 somewhere on the boundary".into()));
    }
    Ok(w)
}

pub fn format_weierstrass(w: &WeierstrassDisk) -> String {
    let mut out = String::from("[p]\n");
    for c in w.p().coeffs() {
        let _ = writeln!(out, "{:?} {:?}", c.re, c.im);
    }
    out.push_str("[q]\n");
    for c in w.q().coeffs() {
        let _ = writeln!(out, "{:?} {:?}", c.re, c.im);
    }
    let b = w.base();
    let _ = write!(out, "[flags]\nhalf_sphere = {}\nbase = {:?} {:?} {:?}\n", w.half_sphere(), b[0], b[1], b[2]);
    out
}

pub fn read_weierstrass(path: &Path) -> Result<WeierstrassDisk> {
    parse_weierstrass(&std::fs::read_to_string(path)?)
}

pub fn write_weierstrass(w: &WeierstrassDisk, path: &Path) -> Result<()> {
    std::fs::write(path, format_weierstrass(w))?;
    Ok(())
}

/// Writes `x_param,y_param,F1,F2,F3,lambda` on a polar grid of `rings × spokes`
/// points plus the origin.
pub fn export_surface_samples<W: std::io::Write>(w: &WeierstrassDisk, rings: usize, spokes: usize, out: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(["x_param", "y_param", "F1", "F2", "F3", "lambda"])?;
    let mut row = |z: Complex64| -> Result<()> {
        let f = w.eval(z);
        let rec = [z.re, z.im, f[0], f[1], f[2], w.conformal_factor(z)].map(|v| format!("{v:?}"));
        csv.write_record(&rec)?;
        Ok(())
    };
    row(Complex64::new(0.0, 0.0))?;
    for i in 1..=rings {
        let r = i as f64 / rings as f64;
        for k in 0..spokes {
            row(Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / spokes as f64))?;
        }
    }
    csv.flush()?;
    Ok(())
}
