use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;

use super::config::{Suite, SuiteConfig};
use super::corpus::{corpus_generate, weierstrass_corpus, Contact, HoloCase, HoloKind, MinimalCase, MinimalKind};
use super::report::{
    BallFindings, Findings, HoloFindings, MinimalFindings, RunReport, SearchSummary, Sense, SuiteAccumulator,
    SuiteReport,
};
use super::sampling::{ball_point, circle_point, disk_point, unit_vector};
use crate::ball::{
    cayley_klein_dist, disk_automorphism, poincare_dist, pseudo_hyperbolic_quotient, BallAutomorphism, CVec,
    MetricPoint,
};
use crate::error::Result;
use crate::holo::bounds::{angular_derivative_at_one, boundary_origin_terms, growth_terms, julia_terms, OriginData};
use crate::holo::{
    affine_rigidity_check, boundary_bound_shifted, schwarz_derivative_bound,
    two_sided_quotient_check, BoundaryPoint, Expr, HoloDisk,
};
use crate::minimal::checks::{distance_decreasing_terms, lemma0_terms};
use crate::minimal::weierstrass::norm3;
use crate::minimal::{
    boundary_minimal_margin, halfsphere_chain_check, inverse_lipschitz_check, isothermal_residual,
    metric_identity_audit, summarize_audits, MetricAudit,
};
use crate::quadrature::GaussLegendre;
use crate::rng::stream;
use crate::search::{sharpness_report, FamilySpec, SharpnessReport};
use crate::tolerance::{self, Tolerances};

/// Interior evaluation points per holomorphic case.
const HOLO_POINTS: usize = 8;
/// Multi-start count for the sharpness searches.
pub const SEARCH_RESTARTS: usize = 20;
/// Sampling radius for automorphism parameters and points in the identity checks.
pub const BALL_SAMPLE_RADIUS: f64 = 0.95;

fn cfmt(z: Complex64) -> String {
    crate::holo::notation::format_complex(z)
}

/// Runs the selected suites. Every case draws from its own
/// `(seed, suite, index)` stream.
pub fn run_suite(config: &SuiteConfig) -> Result<RunReport> {
    config.validate()?;
    let mut suites = BTreeMap::new();
    let mut wall_time = BTreeMap::new();
    let mut findings = Findings::default();
    for &suite in &config.suites {
        let start = Instant::now();
        let report = match suite {
            Suite::Ball => {
                let (r, f) = ball_suite(config);
                findings.ball = Some(f);
                r
            }
            Suite::Holo => {
                let (r, f) = holo_suite(config)?;
                findings.holo = Some(f);
                r
            }
            Suite::Minimal => {
                let (r, f) = minimal_suite(config)?;
                findings.minimal = f;
                r
            }
            Suite::Search => {
                let (r, f) = search_suite(config)?;
                findings.search = Some(f.iter().map(|(name, rep)| summarize_search(name, rep)).collect());
                r
            }
        };
        wall_time.insert(suite.name().to_string(), start.elapsed().as_secs_f64());
        suites.insert(suite.name().to_string(), report);
    }
    let pass = suites.values().all(SuiteReport::pass);
    Ok(RunReport {
        tool: "schwarz".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.echo(),
        suites,
        findings,
        pass,
        wall_time,
    })
}

fn ball_suite(config: &SuiteConfig) -> (SuiteReport, BallFindings) {
    let mut acc = SuiteAccumulator::new(&config.tolerances);
    let mut findings = BallFindings::default();
    for &m in &config.dimensions {
        let label = format!("ball.m{m}");
        for i in 0..config.samples_per_check {
            acc.case();
            let mut rng = stream(config.seed, &label, i as u64);
            let a = ball_point(&mut rng, m, BALL_SAMPLE_RADIUS);
            let w = ball_point(&mut rng, m, BALL_SAMPLE_RADIUS);
            let v = unit_vector(&mut rng, m);
            let w_closed = ball_point(&mut rng, m, 1.0);
            let ctx = || format!("m={m}; a={a}; w={w}");
            if let Err(e) = ball_case(&mut acc, &mut findings, &a, &w, &v, &w_closed) {
                acc.error(ctx, e);
            }
        }
    }
    for i in 0..config.samples_per_check {
        acc.case();
        let mut rng = stream(config.seed, "ball.disk", i as u64);
        let (z, w, c) = (disk_point(&mut rng, 0.99), disk_point(&mut rng, 0.99), disk_point(&mut rng, 0.9));
        let before = poincare_dist(z, w);
        let after = poincare_dist(disk_automorphism(c, z), disk_automorphism(c, w));
        match (before, after) {
            (Ok(b), Ok(a)) => acc.margin("poincare_invariance", Sense::Equal, a, b, || {
                format!("z={}; w={}; c={}", cfmt(z), cfmt(w), cfmt(c))
            }),
            (Err(e), _) | (_, Err(e)) => acc.error(|| format!("z={}; w={}", cfmt(z), cfmt(w)), e),
        }
    }
    (acc.finish(), findings)
}

fn ball_case(
    acc: &mut SuiteAccumulator,
    findings: &mut BallFindings,
    a: &CVec,
    w: &CVec,
    v: &CVec,
    w_closed: &CVec,
) -> Result<()> {
    let m = a.dim();
    let aut = BallAutomorphism::new(a.clone())?;
    let ctx = || format!("a={a}; w={w}");
    acc.margin("phi_norm_identity", Sense::AtMost, aut.norm_identity_residual(w)?, 0.0, ctx);
    acc.margin("involution", Sense::AtMost, aut.involution_residual(w)?, 0.0, ctx);

    let phi_norm = aut.apply(w)?.norm();
    let quotient = pseudo_hyperbolic_quotient(a, w)?;
    acc.margin("quotient_dominance", Sense::AtLeast, quotient, phi_norm, ctx);
    if m >= 2 {
        findings.quotient_max_gap = findings.quotient_max_gap.max(quotient - phi_norm);
    }

    let h = tolerance::FD_STEP;
    let fd = (&aut.apply(&(w + &v.scale_re(h)))? - &aut.apply(&(w - &v.scale_re(h)))?).scale_re(0.5 / h);
    let exact = aut.differential(w, v)?;
    acc.margin("dphi_finite_difference", Sense::AtMost, (&fd - &exact).norm() / exact.norm().max(1.0), 0.0, ctx);

    let mut anchors = vec![a.clone()];
    if let Some(e) = aut.e() {
        anchors.push(e.clone());
    }
    for p in &anchors {
        let formula = aut.opnorm_formula(p)?;
        let oracle = aut.opnorm_oracle(p)?;
        acc.margin("opnorm_anchor", Sense::AtMost, (formula - oracle).abs() / oracle, 0.0, || format!("a={a}; w={p}"));
    }
    let r = aut.r();
    let oracle = aut.opnorm_oracle(w_closed)?;
    acc.margin("opnorm_supremum", Sense::AtMost, oracle, (1.0 + r) / (1.0 - r), || format!("a={a}; w={w_closed}"));
    let formula = aut.opnorm_formula(w_closed)?;
    findings.opnorm_formula_max_undershoot = findings.opnorm_formula_max_undershoot.max((oracle - formula) / oracle);

    let x: Vec<f64> = w.iter().flat_map(|c| [c.re, c.im]).collect();
    let origin = MetricPoint::real(&vec![0.0; x.len()])?;
    let radial = cayley_klein_dist(&origin, &MetricPoint::real(&x)?)?;
    acc.margin("klein_radial", Sense::Equal, radial, w.norm().atanh(), ctx);
    Ok(())
}

/// Zero parameter of `z b_c(z) u`, read back from the expression.
fn z_blaschke_parameter(disk: &HoloDisk) -> Option<Complex64> {
    match disk.expr() {
        Expr::Embed(inner, _) => match inner.as_ref() {
            Expr::Mul(l, r) => match (l.as_ref(), r.as_ref()) {
                (Expr::Z, Expr::Blaschke(c)) => Some(*c),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    }
}

fn holo_suite(config: &SuiteConfig) -> Result<(SuiteReport, HoloFindings)> {
    let mut acc = SuiteAccumulator::new(&config.tolerances);
    let mut findings = HoloFindings { two_sided_lower_unasserted_samples: 0, two_sided_lower_unasserted_min_margin: f64::INFINITY };
    for &m in &config.dimensions {
        let corpus = corpus_generate(config.seed, m, config.samples_per_check)?;
        let label = format!("holo.m{m}");
        for case in &corpus {
            acc.case();
            let mut rng = stream(config.seed, &label, case.index as u64);
            if let Err(e) = holo_case(&mut acc, &mut findings, case, &mut rng) {
                acc.error(|| format!("m={m}; F={}", case.disk), e);
            }
        }
    }
    Ok((acc.finish(), findings))
}

fn holo_case<R: Rng>(acc: &mut SuiteAccumulator, findings: &mut HoloFindings, case: &HoloCase, rng: &mut R) -> Result<()> {
    let disk = &case.disk;
    let ctx = || format!("F={disk}");
    let sup = disk.boundary_sup(tolerance::BOUNDARY_GRID)?;
    acc.margin("ball_membership", Sense::AtMost, sup, 1.0, ctx);

    let origin = OriginData::of(disk)?;
    let fixes = origin.fixes_origin();
    let a = origin.deriv_norm();
    acc.report("schwarz_derivative", schwarz_derivative_bound(disk)?);

    let points: Vec<Complex64> = (0..HOLO_POINTS).map(|_| disk_point(rng, 0.999)).collect();
    for (k, &z) in points.iter().enumerate() {
        let at = || format!("F={disk}; z={}", cfmt(z));
        if k < 2 {
            acc.margin("deriv_finite_difference", Sense::AtMost, disk.finite_difference_gap(z, tolerance::FD_STEP)?, 0.0, at);
        }
        if !fixes {
            continue;
        }
        let (lhs, rhs) = growth_terms(disk, a, z)?;
        acc.margin("growth", Sense::AtMost, lhs, rhs, at);
        if case.kind == HoloKind::Affine {
            acc.margin("equality", Sense::Equal, lhs, rhs, at);
        }
        if z.norm() > 0.0 {
            let two = two_sided_quotient_check(disk, z)?;
            acc.report("two_sided", two.upper);
            if two.lower_asserted {
                acc.report("two_sided", two.lower);
            } else {
                findings.two_sided_lower_unasserted_samples += 1;
                findings.two_sided_lower_unasserted_min_margin =
                    findings.two_sided_lower_unasserted_min_margin.min(two.lower.margin);
            }
        }
    }
    if fixes {
        if let Some(rep) = affine_rigidity_check(disk, 8, 16)? {
            acc.report("affine_rigidity", rep);
        }
    }

    if case.boundary_contact {
        let zetas = [BoundaryPoint::one(), BoundaryPoint::new(circle_point(rng))?, BoundaryPoint::new(circle_point(rng))?];
        for zeta in &zetas {
            let at = || format!("F={disk}; ζ={}", cfmt(zeta.zeta()));
            if fixes {
                let (lhs, rhs) = boundary_origin_terms(disk, a, zeta)?;
                acc.margin("boundary_origin", Sense::AtLeast, lhs, rhs, at);
                let equality_here = match case.kind {
                    HoloKind::Affine | HoloKind::ZSquared => true,
                    HoloKind::Extremal => zeta.zeta() == Complex64::new(1.0, 0.0),
                    _ => false,
                };
                if equality_here {
                    acc.margin("equality", Sense::Equal, lhs, rhs, at);
                }
            }
            let shifted = boundary_bound_shifted(disk, zeta)?;
            acc.report("boundary_shifted", shifted.main);
            acc.report("boundary_shifted", shifted.floor);
        }
        if let Some(c) = z_blaschke_parameter(disk).filter(|c| c.norm() > 0.0) {
            let zeta = BoundaryPoint::new(c / c.norm())?;
            let (lhs, rhs) = boundary_origin_terms(disk, a, &zeta)?;
            acc.margin("equality", Sense::Equal, lhs, rhs, || format!("F={disk}; ζ={}", cfmt(zeta.zeta())));
        }
    }

    if let (HoloKind::Blaschke(degree), 1) = (case.kind, disk.dim()) {
        let at_one = disk.eval(Complex64::new(1.0, 0.0))?[0];
        let fixed = HoloDisk::new(Expr::smul(at_one.conj() / at_one.norm(), disk.expr().clone()))?;
        let angular = angular_derivative_at_one(&fixed)?;
        for &z in &points {
            let (lhs, rhs) = julia_terms(&fixed, angular, z)?;
            let at = || format!("F={fixed}; z={}", cfmt(z));
            acc.margin("julia", Sense::AtMost, lhs, rhs, at);
            if degree == 1 {
                acc.margin("equality", Sense::Equal, lhs, rhs, at);
            }
        }
    }
    Ok(())
}

fn minimal_suite(config: &SuiteConfig) -> Result<(SuiteReport, Option<MinimalFindings>)> {
    let tols = &config.tolerances;
    let mut acc = SuiteAccumulator::new(tols);
    let corpus = weierstrass_corpus(config.seed, 12);
    let rule = GaussLegendre::new(64);
    let mut audits: Vec<MetricAudit> = Vec::new();
    let mut diameter_gap: f64 = 0.0;
    let mut general_gap: f64 = 0.0;
    for case in &corpus {
        acc.case();
        let mut rng = stream(config.seed, "minimal", case.index as u64);
        let before = audits.len();
        let result = minimal_case(&mut acc, case, &rule, config.samples_per_check, &mut rng, &mut audits)
            .and_then(|(dg, gg)| {
                diameter_gap = diameter_gap.max(dg);
                general_gap = general_gap.max(gg);
                let own = summarize_audits(&audits[before..])?;
                chain_checks(&mut acc, case, own.constant, &mut rng)
            });
        if let Err(e) = result {
            acc.error(|| format!("W={}", case.surface), e);
        }
    }
    let summary = summarize_audits(&audits).ok();
    if let Some(s) = &summary {
        acc.margin("metric_ratio_spread", Sense::AtMost, s.relative_spread, 0.0, || {
            format!("ratio range [{:e}, {:e}]", s.ratio_min, s.ratio_max)
        });
    }
    let findings = summary.map(|metric_audit| MinimalFindings {
        metric_audit,
        planar_diameter_max_gap: diameter_gap,
        planar_general_max_gap: general_gap,
    });
    Ok((acc.finish(), findings))
}

/// Returns the largest distance gaps on diameters and on general pairs for the
/// flat central disk (zero otherwise).
fn minimal_case<R: Rng>(
    acc: &mut SuiteAccumulator,
    case: &MinimalCase,
    rule: &GaussLegendre,
    samples: usize,
    rng: &mut R,
    audits: &mut Vec<MetricAudit>,
) -> Result<(f64, f64)> {
    let w = &case.surface;
    let ctx = || format!("W={w}");
    acc.margin("null_condition", Sense::AtMost, w.null_residual(), 0.0, ctx);
    acc.margin("ball_membership", Sense::AtMost, w.ball_sup(), 1.0, ctx);
    let f0 = norm3(&w.eval(Complex64::new(0.0, 0.0)));
    let central = case.kind == MinimalKind::PlanarCentral;
    let (mut diameter_gap, mut general_gap): (f64, f64) = (0.0, 0.0);
    for k in 0..samples {
        let z = disk_point(rng, 1.0);
        let at = || format!("W={w}; z={}", cfmt(z));
        let sp = w.partials(z);
        acc.margin("isothermal", Sense::AtMost, isothermal_residual(&sp), 0.0, at);
        let n = w.gauss_normal(z);
        acc.margin("unit_normal", Sense::AtMost, (norm3(&n) - 1.0).abs(), 0.0, at);
        let q = w.q().eval(z).norm();
        if (q - 1.0).abs() > 1e-9 {
            let consistent = (n[2] > 0.0) == (q < 1.0);
            acc.margin("unit_normal", Sense::AtMost, if consistent { 0.0 } else { 1.0 }, 0.0, at);
        }
        audits.push(metric_identity_audit(w, z));
        if k < 4 {
            acc.margin("primitive_quadrature", Sense::AtMost, w.primitive_quadrature_gap(z, rule), 0.0, at);
        }
        let (lhs, rhs) = lemma0_terms(w, f0, z)?;
        acc.margin("lemma0", Sense::AtMost, lhs, rhs, at);

        let (z1, z2) = (disk_point(rng, 0.999), disk_point(rng, 0.999));
        let pair = || format!("W={w}; z={}; w={}", cfmt(z1), cfmt(z2));
        let (dk, dp) = distance_decreasing_terms(w, z1, z2)?;
        acc.margin("distance_decreasing", Sense::AtMost, dk, dp, pair);
        if central {
            general_gap = general_gap.max(dp - dk);
            // second point on the diameter through the first
            let t = rng.gen_range(-0.999..0.999);
            let z3 = if z1.norm() > 0.0 { z1 / z1.norm() * t } else { Complex64::new(t, 0.0) };
            let (dk, dp) = distance_decreasing_terms(w, z1, z3)?;
            acc.margin("equality", Sense::Equal, dk, dp, || format!("W={w}; z={}; w={}", cfmt(z1), cfmt(z3)));
            diameter_gap = diameter_gap.max((dp - dk).abs());
        }
    }
    let zetas: Vec<Complex64> = match case.contact {
        Contact::None => vec![],
        Contact::Everywhere => vec![Complex64::new(1.0, 0.0), circle_point(rng), circle_point(rng)],
        Contact::At { theta } => vec![Complex64::from_polar(1.0, theta)],
    };
    for zeta in zetas {
        let rep = boundary_minimal_margin(w, zeta)?;
        if central {
            acc.margin("equality", Sense::Equal, rep.lhs, rep.rhs, || rep.instance.clone());
        }
        acc.report("boundary_minimal", rep);
    }
    Ok((diameter_gap, general_gap))
}

fn chain_checks<R: Rng>(acc: &mut SuiteAccumulator, case: &MinimalCase, constant: f64, rng: &mut R) -> Result<()> {
    let w = &case.surface;
    if !w.half_sphere() || w.p_winding_number()? != 0 {
        return Ok(());
    }
    for rep in halfsphere_chain_check(w, constant)?.reports() {
        acc.report("halfsphere_chain", rep.clone());
    }
    let pairs: Vec<(Complex64, Complex64)> = (0..8).map(|_| (disk_point(rng, 1.0), disk_point(rng, 1.0))).collect();
    acc.report("inverse_lipschitz", inverse_lipschitz_check(w, &pairs)?);
    Ok(())
}

/// The three sharpness searches: unrestricted and phase-restricted one-parameter
/// families and the two-dimensional shifted family.
pub fn search_runs(seed: u64, restarts: usize) -> Result<Vec<(String, SharpnessReport)>> {
    Ok(vec![
        ("family_1d".into(), sharpness_report(&FamilySpec::family_1d(), restarts, seed)?),
        (
            "family_1d_restricted".into(),
            sharpness_report(&FamilySpec::family_1d_phases(PI / 4.0, PI), restarts, seed)?,
        ),
        ("family_md_2".into(), sharpness_report(&FamilySpec::family_md(2), restarts, seed)?),
    ])
}

fn search_suite(config: &SuiteConfig) -> Result<(SuiteReport, Vec<(String, SharpnessReport)>)> {
    let tols: &Tolerances = &config.tolerances;
    let mut acc = SuiteAccumulator::new(tols);
    let runs = search_runs(config.seed, SEARCH_RESTARTS)?;
    for (name, rep) in &runs {
        acc.case();
        let ctx = || format!("{name}: argmin {:?}", rep.argmin);
        acc.margin("search_margin", Sense::AtLeast, rep.min_evaluated, 0.0, ctx);
        match name.as_str() {
            "family_1d" => {
                acc.margin("search_margin", Sense::AtMost, rep.best_margin, 0.0, ctx);
                acc.margin("search_phase", Sense::AtMost, rep.argmin[1].sin().abs(), 0.0, ctx);
            }
            "family_1d_restricted" => acc.exceeds("search_strictness", rep.best_margin, ctx),
            _ => {}
        }
    }
    Ok((acc.finish(), runs))
}

fn summarize_search(name: &str, rep: &SharpnessReport) -> SearchSummary {
    SearchSummary {
        name: name.to_string(),
        restarts: rep.restarts,
        best_margin: rep.best_margin,
        argmin: rep.argmin.clone(),
        best_restart: rep.best_restart,
        min_evaluated: rep.min_evaluated,
        restart_minima: rep.runs.iter().map(|r| r.result.fmin).collect(),
    }
}
