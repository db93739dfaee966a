use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::sampling::{ball_point, disk_point, unit_vector};
use crate::ball::{BallAutomorphism, CVec};
use crate::error::Result;
use crate::holo::{affine_disk, blaschke_product, extremal_family_1d, z_squared, z_times_blaschke, Expr, HoloDisk};
use crate::minimal::WeierstrassDisk;
use crate::poly::Poly;
use crate::rng::stream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoloKind {
    Affine,
    ZSquared,
    ZBlaschke,
    /// `u · Π b_{c_k}` of the given degree.
    Blaschke(usize),
    Extremal,
    Polynomial,
    /// `φ_a ∘ (z b_c u)`: boundary contact, `F(0) = a`.
    ComposedShifted,
    /// `φ_a ∘ (a + ρ z v)`: fixes the origin, stays inside.
    ComposedCentered,
}

impl HoloKind {
    pub fn name(self) -> String {
        match self {
            HoloKind::Affine => "affine".into(),
            HoloKind::ZSquared => "z_squared".into(),
            HoloKind::ZBlaschke => "z_blaschke".into(),
            HoloKind::Blaschke(d) => format!("blaschke_{d}"),
            HoloKind::Extremal => "extremal".into(),
            HoloKind::Polynomial => "polynomial".into(),
            HoloKind::ComposedShifted => "composed_shifted".into(),
            HoloKind::ComposedCentered => "composed_centered".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HoloCase {
    pub index: usize,
    pub kind: HoloKind,
    pub disk: HoloDisk,
    /// `‖F(ζ)‖ = 1` on the whole unit circle by construction.
    pub boundary_contact: bool,
}

fn complex_cube<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn holo_case<R: Rng>(rng: &mut R, index: usize, m: usize) -> Result<HoloCase> {
    let u = unit_vector(rng, m);
    let (kind, expr, contact) = match index {
        0 => (HoloKind::Affine, affine_disk(u), true),
        1 => (HoloKind::ZSquared, z_squared(u), true),
        2 => (HoloKind::ZBlaschke, z_times_blaschke(disk_point(rng, 0.9), u), true),
        _ => match (index - 3) % 5 {
            0 => {
                let degree = rng.gen_range(1..=3);
                let mut zeros: Vec<Complex64> = (0..degree).map(|_| disk_point(rng, 0.9)).collect();
                if rng.gen_bool(0.5) {
                    zeros[0] = Complex64::new(0.0, 0.0);
                }
                (HoloKind::Blaschke(degree), Expr::embed(blaschke_product(&zeros), u), true)
            }
            1 => {
                let a = rng.gen_range(0.0..0.99);
                (HoloKind::Extremal, Expr::embed(extremal_family_1d(a)?.expr().clone(), u), true)
            }
            2 => {
                let degree = rng.gen_range(1..=6);
                let centered = rng.gen_bool(0.5);
                let mut coeffs: Vec<CVec> = (0..=degree)
                    .map(|_| CVec::new((0..m).map(|_| complex_cube(rng)).collect()))
                    .collect();
                if centered {
                    coeffs[0] = CVec::zeros(m);
                }
                let total: f64 = coeffs.iter().map(CVec::norm).sum();
                let scale = rng.gen_range(0.5..0.999) / total;
                let polys = (0..m)
                    .map(|i| Poly::new(coeffs.iter().map(|c| c[i] * scale).collect()))
                    .collect();
                (HoloKind::Polynomial, Expr::Poly(polys), false)
            }
            3 => {
                let a = ball_point(rng, m, 0.9);
                let c = disk_point(rng, 0.9);
                let aut = BallAutomorphism::new(a)?;
                (HoloKind::ComposedShifted, Expr::compose(aut, z_times_blaschke(c, u)), true)
            }
            _ => {
                let a = ball_point(rng, m, 0.9);
                let rho = (1.0 - a.norm()) * rng.gen_range(0.1..0.99);
                let inner = Expr::add(Expr::Const(a.clone()), affine_disk(u.scale_re(rho)));
                (HoloKind::ComposedCentered, Expr::compose(BallAutomorphism::new(a)?, inner), false)
            }
        },
    };
    Ok(HoloCase { index, kind, disk: HoloDisk::new(expr)?, boundary_contact: contact })
}

/// Reproducible holomorphic corpus in `C^m`. The first three entries are always
/// the equality archetypes `z·u`, `z²·u` and `z b_a(z)·u`; the list has
/// `max(count, 3)` entries.
pub fn corpus_generate(seed: u64, m: usize, count: usize) -> Result<Vec<HoloCase>> {
    let label = format!("corpus.holo.m{m}");
    (0..count.max(3)).map(|i| holo_case(&mut stream(seed, &label, i as u64), i, m)).collect()
}

/// Where a Weierstrass surface meets the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contact {
    None,
    /// `‖F(ζ)‖ = 1` for every `|ζ| = 1`.
    Everywhere,
    /// Contact at the single boundary point `ζ = e^{iθ}`.
    At { theta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalKind {
    /// Planar disk through the origin.
    PlanarCentral,
    /// Planar disk not through the origin.
    PlanarTranslated,
    Enneper,
    /// Random data with `|q| < 1` and zero-free `p`.
    RandomHalfSphere,
    RandomGeneric,
}

impl MinimalKind {
    pub fn name(self) -> &'static str {
        match self {
            MinimalKind::PlanarCentral => "planar_central",
            MinimalKind::PlanarTranslated => "planar_translated",
            MinimalKind::Enneper => "enneper",
            MinimalKind::RandomHalfSphere => "random_half_sphere",
            MinimalKind::RandomGeneric => "random_generic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimalCase {
    pub index: usize,
    pub kind: MinimalKind,
    pub surface: WeierstrassDisk,
    pub contact: Contact,
}

/// Coefficients of a random polynomial of degree at most `max_degree`.
fn random_poly<R: Rng>(rng: &mut R, max_degree: usize) -> Vec<Complex64> {
    let degree = rng.gen_range(0..=max_degree);
    (0..=degree).map(|_| complex_cube(rng)).collect()
}

fn minimal_case<R: Rng>(rng: &mut R, index: usize) -> MinimalCase {
    let zero = Complex64::new(0.0, 0.0);
    let (kind, surface, contact) = match index {
        0 => (MinimalKind::PlanarCentral, WeierstrassDisk::planar(zero, 1.0), Contact::Everywhere),
        1 => (MinimalKind::PlanarCentral, WeierstrassDisk::planar(disk_point(rng, 3.0), 1.0), Contact::Everywhere),
        2 => {
            let h: f64 = rng.gen_range(0.1..0.9);
            let s = WeierstrassDisk::planar(zero, ((1.0 - h) * (1.0 + h)).sqrt()).with_base([0.0, 0.0, h]);
            (MinimalKind::PlanarTranslated, s, Contact::Everywhere)
        }
        3 => {
            let c: f64 = rng.gen_range(0.1..0.9);
            let s = WeierstrassDisk::planar(zero, 1.0 - c).with_base([c, 0.0, 0.0]);
            (MinimalKind::PlanarTranslated, s, Contact::At { theta: 0.0 })
        }
        4 => (MinimalKind::Enneper, WeierstrassDisk::enneper().scaled_into_ball(), Contact::None),
        _ if index % 2 == 1 => {
            let mut q = random_poly(rng, 4);
            let q_total: f64 = q.iter().map(|c| c.norm()).sum();
            let q_scale = rng.gen_range(0.1..0.95) / q_total;
            q.iter_mut().for_each(|c| *c *= q_scale);
            let mut p = random_poly(rng, 4);
            let rest: f64 = p[1..].iter().map(|c| c.norm()).sum();
            let lead = (rest + rng.gen_range(0.2..1.0)) * p[0] / p[0].norm();
            p[0] = lead;
            let s = WeierstrassDisk::new(Poly::new(p), Poly::new(q)).scaled_into_ball();
            (MinimalKind::RandomHalfSphere, s, Contact::None)
        }
        _ => {
            let p = random_poly(rng, 4);
            let q = random_poly(rng, 4);
            let s = WeierstrassDisk::new(Poly::new(p), Poly::new(q)).with_base([0.1, -0.2, 0.05]).scaled_into_ball();
            (MinimalKind::RandomGeneric, s, Contact::None)
        }
    };
    MinimalCase { index, kind, surface, contact }
}

/// Reproducible Weierstrass corpus with `max(count, 5)` surfaces. Fixed
/// entries: the flat central disk, a rotated central disk, two translated
/// planar disks with boundary contact and the scaled Enneper surface.
pub fn weierstrass_corpus(seed: u64, count: usize) -> Vec<MinimalCase> {
    (0..count.max(5)).map(|i| minimal_case(&mut stream(seed, "corpus.minimal", i as u64), i)).collect()
}

/// Printable corpus entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusEntry {
    pub index: usize,
    pub kind: String,
    pub expression: String,
    pub boundary_contact: bool,
}

impl From<&HoloCase> for CorpusEntry {
    fn from(c: &HoloCase) -> Self {
        CorpusEntry {
            index: c.index,
            kind: c.kind.name(),
            expression: c.disk.to_string(),
            boundary_contact: c.boundary_contact,
        }
    }
}

impl From<&MinimalCase> for CorpusEntry {
    fn from(c: &MinimalCase) -> Self {
        CorpusEntry {
            index: c.index,
            kind: c.kind.name().to_string(),
            expression: c.surface.to_string(),
            boundary_contact: c.contact != Contact::None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal::weierstrass::boundary_grid;

    #[test]
    fn holo_corpus_is_reproducible_and_contains_archetypes() {
        let a = corpus_generate(1, 1, 10).unwrap();
        let b = corpus_generate(1, 1, 10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert_eq!(
            a.iter().take(3).map(|c| c.kind).collect::<Vec<_>>(),
            vec![HoloKind::Affine, HoloKind::ZSquared, HoloKind::ZBlaschke]
        );
        assert_eq!(corpus_generate(1, 2, 1).unwrap().len(), 3);
        assert_ne!(corpus_generate(2, 1, 10).unwrap(), a);
    }

    #[test]
    fn holo_corpus_stays_in_the_ball() {
        for m in [1, 2, 3] {
            for case in corpus_generate(5, m, 40).unwrap() {
                let sup = case.disk.boundary_sup(512).unwrap();
                assert!(sup <= 1.0 + 1e-12, "{:?} {sup}", case.kind);
                if case.boundary_contact {
                    assert!((sup - 1.0).abs() < 1e-12, "{:?}", case.kind);
                }
            }
        }
    }

    #[test]
    fn weierstrass_corpus_is_reproducible() {
        let a = weierstrass_corpus(4, 9);
        assert_eq!(a, weierstrass_corpus(4, 9));
        assert!(a.iter().any(|c| c.kind == MinimalKind::PlanarCentral));
        for case in &a {
            assert!(case.surface.ball_sup() <= 1.0 + 1e-12, "{:?}", case.kind);
            match case.contact {
                Contact::Everywhere => {
                    for z in boundary_grid(64) {
                        let f = case.surface.eval(z);
                        assert!((f.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() < 1e-12);
                    }
                }
                Contact::At { theta } => {
                    let f = case.surface.eval(Complex64::from_polar(1.0, theta));
                    assert!((f.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs() < 1e-12);
                }
                Contact::None => {}
            }
            if case.kind == MinimalKind::RandomHalfSphere {
                assert!(case.surface.half_sphere());
                assert_eq!(case.surface.p_winding_number().unwrap(), 0);
            }
        }
    }

    #[test]
    fn corpus_entries_print() {
        let corpus = corpus_generate(1, 1, 3).unwrap();
        let e = CorpusEntry::from(&corpus[1]);
        assert_eq!(e.kind, "z_squared");
        assert!(e.expression.starts_with("scale(mul(z,z),u="));
    }
}
