use std::f64::consts::{PI, SQRT_2};

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CatalogueEntry, Fault, Outcome, Relation, VerifyConfig};
use crate::capacity::{
    build_meshes, riesz_energy, riesz_energy_on_meshes, richardson, solve_mesh, CapacityOptions, Mesh,
    Resolutions,
};
use crate::energy::{
    ball_energy_q, ball_energy_u, charged_infimum, critical_thresholds, elongation_crossover,
    ellipse_bound_relative_error, energy_report, energy_upper_bound_slope, eu_divergence_closed_form,
    eu_divergence_sequence, merge_equality_split, merge_excess, merge_excess_factored, mist_configuration,
    multiball_energy_upper, nonexistence_witness, optimal_ball_radius, split_crossover,
    two_ball_split_energy, voltage_ball_infimum, EnergyReport, VoltageBallInfimum,
};
use crate::geometry::random::{perturbed_disk, random_convex_polygon, random_disjoint_pair, random_star_polygon};
use crate::geometry::{
    hadwiger_round, make_disk, make_ellipse, make_rectangle, ConvexPolygon, EllipseSpec, PlanarSet, Point,
    RotationRule,
};
use crate::specfun::{derive_certificate, dudko_f, dudko_g, elliptic_e, elliptic_k};

type CheckOutput = Result<Outcome, String>;

const GRID: usize = 10_000;
const SLACK: f64 = 0.02;
const DISK_VERTICES: usize = 256;

fn rng(cfg: &VerifyConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn unit_disk() -> Result<PlanarSet, String> {
    make_disk(1.0, Point::ORIGIN, DISK_VERTICES).map_err(err)
}

fn test_ellipse() -> Result<(PlanarSet, EllipseSpec), String> {
    let spec = EllipseSpec::new(1.0, 0.7).map_err(err)?;
    Ok((make_ellipse(spec, Point::ORIGIN, DISK_VERTICES).map_err(err)?, spec))
}

fn order_text(order: Option<f64>) -> String {
    order.map_or_else(|| "none".to_string(), |p| format!("{p:.3}"))
}

fn relative(measured: f64, target: f64) -> f64 {
    measured / target - 1.0
}

fn disk_capacity(cfg: &VerifyConfig) -> CheckOutput {
    let r = riesz_energy(&unit_disk()?, &cfg.accurate()).map_err(err)?;
    let target = match cfg.fault {
        Some(Fault::WrongDiskFormula) => PI / 4.0,
        None => PI / 2.0,
    };
    Ok(Outcome::new(r.extrapolated, target, 0.01 * target, Relation::Within).detail(format!(
        "cells {:?}, order {}",
        r.samples.iter().map(|s| s.cells).collect::<Vec<_>>(),
        order_text(r.order)
    )))
}

fn ellipse_capacity(cfg: &VerifyConfig) -> CheckOutput {
    let (s, _) = test_ellipse()?;
    let r = riesz_energy(&s, &cfg.accurate()).map_err(err)?;
    let target = elliptic_k(0.49).map_err(err)?;
    Ok(Outcome::new(r.extrapolated, target, 0.01 * target, Relation::Within)
        .detail(format!("e = 0.7, order {}", order_text(r.order))))
}

fn ellipse_perimeter(_: &VerifyConfig) -> CheckOutput {
    let spec = EllipseSpec::new(1.0, 0.7).map_err(err)?;
    let s = make_ellipse(spec, Point::ORIGIN, 4096).map_err(err)?;
    let target = 4.0 * elliptic_e(0.49).map_err(err)?;
    Ok(Outcome::new(s.perimeter(), target, 1e-4, Relation::Within).detail("4096 vertices"))
}

fn capacity_scaling(cfg: &VerifyConfig) -> CheckOutput {
    let d1 = unit_disk()?;
    let d2 = make_disk(2.0, Point::ORIGIN, DISK_VERTICES).map_err(err)?;
    let o = cfg.accurate();
    let e1 = riesz_energy(&d1, &o).map_err(err)?;
    let e2 = riesz_energy(&d2, &o).map_err(err)?;
    let ratio = e2.energy / e1.energy;
    let near_quarter = (e2.extrapolated / (PI / 4.0) - 1.0).abs() <= 0.01;
    Ok(Outcome::new(ratio, 0.5, 1e-9, Relation::Within)
        .require(near_quarter)
        .detail(format!("radius 2 energy {:.6}", e2.extrapolated)))
}

/// Largest relative departure of cell densities from `exact` on cells at
/// least 0.2 from the boundary.
fn density_error(set: &PlanarSet, opts: &CapacityOptions, exact: impl Fn(Point) -> f64) -> Result<(f64, usize), String> {
    let r = riesz_energy(set, opts).map_err(err)?;
    let m = &r.measure;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (c, rho) in m.mesh().cells().iter().zip(m.densities()) {
        if c.boundary_distance > 0.2 {
            worst = worst.max((rho / exact(c.centroid) - 1.0).abs());
            count += 1;
        }
    }
    Ok((worst, count))
}

fn disk_density(cfg: &VerifyConfig) -> CheckOutput {
    let (worst, n) =
        density_error(&unit_disk()?, &cfg.accurate(), |p| 1.0 / (2.0 * PI * (1.0 - p.dot(p)).sqrt()))?;
    Ok(Outcome::new(worst, 0.0, 0.05, Relation::AtMost).detail(format!("{n} interior cells")).require(n > 0))
}

fn ellipse_density(cfg: &VerifyConfig) -> CheckOutput {
    let (s, spec) = test_ellipse()?;
    let (a, b) = (spec.major(), spec.minor());
    let (worst, n) = density_error(&s, &cfg.accurate(), |p| {
        let q = 1.0 - (p.x / a).powi(2) - (p.y / b).powi(2);
        1.0 / (2.0 * PI * a * b * q.sqrt())
    })?;
    Ok(Outcome::new(worst, 0.0, 0.05, Relation::AtMost).detail(format!("{n} interior cells")).require(n > 0))
}

fn potential_flatness(cfg: &VerifyConfig) -> CheckOutput {
    let r = riesz_energy(&unit_disk()?, &cfg.accurate()).map_err(err)?;
    Ok(Outcome::new(r.residual / r.energy, 0.0, 0.05, Relation::AtMost))
}

fn dudko_grid(_: &VerifyConfig) -> CheckOutput {
    let e = ellipse_bound_relative_error(0.7).map_err(err)?;
    Ok(Outcome::new(e, 5e-5, 1e-5, Relation::Within).detail("e = 0.7"))
}

fn dudko_extreme(_: &VerifyConfig) -> CheckOutput {
    let e = ellipse_bound_relative_error(0.9999).map_err(err)?;
    Ok(Outcome::new(e, 0.25, 0.10, Relation::Within).detail("e = 0.9999"))
}

fn grid() -> impl Iterator<Item = f64> {
    (1..GRID).map(|i| i as f64 / GRID as f64)
}

fn f_bound(_: &VerifyConfig) -> CheckOutput {
    let mut worst = f64::NEG_INFINITY;
    for x in grid() {
        worst = worst.max(dudko_f(x).map_err(err)?);
    }
    Ok(Outcome::new(worst, 1.0, 1e-12, Relation::AtMost).detail("max over grid"))
}

fn f_limit(_: &VerifyConfig) -> CheckOutput {
    Ok(Outcome::new(dudko_f(1e-12).map_err(err)?, 1.0, 1e-9, Relation::Within).detail("x = 1e-12"))
}

fn g_negative(_: &VerifyConfig) -> CheckOutput {
    let mut worst = f64::NEG_INFINITY;
    for x in grid() {
        worst = worst.max(dudko_g(x).map_err(err)?);
    }
    Ok(Outcome::new(worst, 0.0, 0.0, Relation::Below).detail("max over grid"))
}

fn g_certificate(_: &VerifyConfig) -> CheckOutput {
    let cert = derive_certificate().map_err(err)?;
    let r = cert.verify();
    let failures = [
        r.numerator_degree == Some(27),
        r.denominator_degree == Some(15),
        r.numerator_positive_at_zero,
        r.denominator_negative_at_zero,
        r.numerator_root_free,
        r.denominator_root_free,
    ]
    .iter()
    .filter(|ok| !**ok)
    .count();
    Ok(Outcome::new(failures as f64, 0.0, 0.0, Relation::Within).detail(format!(
        "degrees ({}, {}), failed conditions counted",
        r.numerator_degree.map_or(-1, |d| d as i64),
        r.denominator_degree.map_or(-1, |d| d as i64)
    )))
}

struct PartitionSample {
    union_energy: f64,
    union_finest: f64,
    parts: [f64; 2],
    parts_finest: [f64; 2],
    mass0: f64,
    distance: f64,
}

fn partition_samples(cfg: &VerifyConfig) -> Result<Vec<PartitionSample>, String> {
    let mut rng = rng(cfg, 11);
    let fractions = match cfg.survey().resolutions {
        Resolutions::DiameterFractions(f) => f,
        Resolutions::Absolute(_) => vec![8.0, 12.0, 18.0],
    };
    let mut out = Vec::new();
    for _ in 0..10 {
        let (a, b) = random_disjoint_pair(&mut rng);
        let union = a.union(&b).map_err(err)?;
        let small = a.diameter().min(b.diameter());
        let opts = cfg.survey().with_resolutions(Resolutions::Absolute(fractions.iter().map(|k| small / k).collect()));
        let meshes = build_meshes(&union, &opts).map_err(err)?;
        let parts: Vec<Vec<std::sync::Arc<Mesh>>> = (0..2)
            .map(|c| meshes.iter().map(|m| m.restrict(c).map(std::sync::Arc::new)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let whole = riesz_energy_on_meshes(meshes, true).map_err(err)?;
        let mut pe = [0.0; 2];
        let mut pf = [0.0; 2];
        for (c, ms) in parts.into_iter().enumerate() {
            let r = riesz_energy_on_meshes(ms, true).map_err(err)?;
            pe[c] = r.extrapolated;
            pf[c] = r.energy;
        }
        out.push(PartitionSample {
            union_energy: whole.extrapolated,
            union_finest: whole.energy,
            parts: pe,
            parts_finest: pf,
            mass0: whole.measure.component_mass(0),
            distance: a.set_distance(&b).map_err(err)?,
        });
    }
    Ok(out)
}

fn partition_upper(cfg: &VerifyConfig) -> CheckOutput {
    let mut worst = f64::NEG_INFINITY;
    for s in partition_samples(cfg)? {
        for k in 0..=4 {
            let t = k as f64 / 4.0;
            let bound = t * t * s.parts[0] + (1.0 - t) * (1.0 - t) * s.parts[1] + 2.0 * t * (1.0 - t) / s.distance;
            worst = worst.max(relative(s.union_energy, bound));
        }
    }
    Ok(Outcome::new(worst, 0.0, SLACK, Relation::AtMost).detail("10 pairs, 5 charge splits"))
}

fn partition_lower(cfg: &VerifyConfig) -> CheckOutput {
    let mut worst = f64::INFINITY;
    for s in partition_samples(cfg)? {
        let t = s.mass0;
        let recombined = t * t * s.parts_finest[0] + (1.0 - t) * (1.0 - t) * s.parts_finest[1];
        worst = worst.min((s.union_finest - recombined) / s.union_finest);
    }
    Ok(Outcome::new(worst, 0.0, 0.0, Relation::Above).detail("smallest relative margin, finest meshes"))
}

fn ball_merge(_: &VerifyConfig) -> CheckOutput {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let radii = [(q(1, 1), q(1, 1)), (q(1, 3), q(2, 1)), (q(7, 5), q(3, 11)), (q(1, 100), q(50, 1))];
    let mut violations = 0;
    let mut cases = 0;
    for (r1, r2) in &radii {
        let hat = merge_equality_split(r1, r2);
        let mut thetas: Vec<BigRational> = (0..=32).map(|k| q(k, 32)).collect();
        thetas.push(hat.clone());
        for t in &thetas {
            let e = merge_excess(r1, r2, t).map_err(err)?;
            let f = merge_excess_factored(r1, r2, t).map_err(err)?;
            cases += 1;
            let sign_ok = if *t == hat { e.is_zero() } else { e > BigRational::zero() };
            if e != f || !sign_ok {
                violations += 1;
            }
        }
    }
    Ok(Outcome::new(violations as f64, 0.0, 0.0, Relation::Within).detail(format!("{cases} exact cases")))
}

fn capacity(set: &PlanarSet, opts: &CapacityOptions) -> Result<f64, String> {
    Ok(1.0 / riesz_energy(set, opts).map_err(err)?.extrapolated)
}

fn brunn_minkowski(cfg: &VerifyConfig) -> CheckOutput {
    let mut rng = rng(cfg, 13);
    let opts = cfg.survey();
    let mut worst = f64::INFINITY;
    for _ in 0..20 {
        let np = rng.gen_range(5..14);
        let p = random_convex_polygon(&mut rng, np).scale(rng.gen_range(0.7..1.3)).map_err(err)?;
        let nq = rng.gen_range(5..14);
        let q = random_convex_polygon(&mut rng, nq).scale(rng.gen_range(0.7..1.3)).map_err(err)?;
        let mid = p.scale(0.5).map_err(err)?.minkowski_sum(&q.scale(0.5).map_err(err)?);
        let (cp, cq) = (capacity(&p.to_planar_set(), &opts)?, capacity(&q.to_planar_set(), &opts)?);
        let cm = capacity(&mid.to_planar_set(), &opts)?;
        worst = worst.min((cm - 0.5 * cp - 0.5 * cq) / (cp + cq));
    }
    Ok(Outcome::new(worst, 0.0, SLACK, Relation::AtLeast).detail("20 convex pairs, relative to C(p)+C(q)"))
}

fn rectangle_rounding() -> Result<(ConvexPolygon, Vec<ConvexPolygon>), String> {
    let r = ConvexPolygon::new(make_rectangle(3.0, 1.0).map_err(err)?.vertices().to_vec()).map_err(err)?;
    let seq = hadwiger_round(&r, 64, RotationRule::GoldenAngle).map_err(err)?;
    Ok((r, seq))
}

fn hadwiger(_: &VerifyConfig) -> CheckOutput {
    let (r, seq) = rectangle_rounding()?;
    let last = seq.last().expect("64 steps");
    let drift = seq.iter().map(|s| (s.perimeter() - r.perimeter()).abs()).fold(0.0, f64::max);
    Ok(Outcome::new(last.roundness(), 1.05, 0.0, Relation::AtMost)
        .require(drift <= 1e-9 && last.roundness() <= r.roundness())
        .detail(format!("perimeter drift {drift:.2e}")))
}

fn hadwiger_capacity(cfg: &VerifyConfig) -> CheckOutput {
    let (_, seq) = rectangle_rounding()?;
    let opts = cfg.survey();
    let steps = [1usize, 2, 8, 32, 64];
    let energies: Vec<f64> = steps
        .iter()
        .map(|&n| riesz_energy(&seq[n - 1].to_planar_set(), &opts).map(|r| r.extrapolated).map_err(err))
        .collect::<Result<_, _>>()?;
    let worst = energies.windows(2).map(|w| relative(w[1], w[0])).fold(f64::NEG_INFINITY, f64::max);
    let vs_input = energies[1..].iter().map(|e| relative(*e, energies[0])).fold(f64::NEG_INFINITY, f64::max);
    Ok(Outcome::new(worst.max(vs_input), 0.0, SLACK, Relation::AtMost)
        .detail(format!("I1 at steps {steps:?}: {energies:.5?}")))
}

/// A random shape from one of three families.
fn random_shape(rng: &mut ChaCha8Rng, k: usize) -> Result<PlanarSet, String> {
    match k % 3 {
        0 => {
            let area = rng.gen_range(0.5..3.0);
            let amplitude = rng.gen_range(0.02..0.2);
            perturbed_disk(rng, 128, amplitude, 6, area).map_err(err)
        }
        1 => {
            let n = rng.gen_range(6..12);
            Ok(PlanarSet::from_polygon(random_star_polygon(rng, n, 0.3)))
        }
        _ => {
            let n = rng.gen_range(5..14);
            Ok(random_convex_polygon(rng, n).to_planar_set())
        }
    }
}

fn global_min(cfg: &VerifyConfig) -> CheckOutput {
    let mut rng = rng(cfg, 17);
    let opts = cfg.survey();
    let mut worst = f64::INFINITY;
    for k in 0..20 {
        let s = random_shape(&mut rng, k)?;
        let lambda = rng.gen_range(0.5..10.0);
        let e = energy_report(&s, lambda, &opts).map_err(err)?;
        worst = worst.min(relative(e.energy_q, charged_infimum(lambda)));
    }
    Ok(Outcome::new(worst, 0.0, SLACK, Relation::AtLeast).detail("20 random sets, relative to 2 pi sqrt(lambda)"))
}

fn fixed_area_min(cfg: &VerifyConfig) -> CheckOutput {
    let mut rng = rng(cfg, 19);
    let opts = cfg.accurate();
    let lambda = critical_thresholds(PI).map_err(err)?.lambda0_q;
    let disk = energy_report(&unit_disk()?, lambda, &opts).map_err(err)?;
    let mut worst = f64::INFINITY;
    for _ in 0..20 {
        let s = perturbed_disk(&mut rng, DISK_VERTICES, 0.05, 8, PI).map_err(err)?;
        let e = energy_report(&s, lambda, &opts).map_err(err)?;
        worst = worst.min((e.energy_q - disk.energy_q) / disk.energy_q);
    }
    Ok(Outcome::new(worst, 0.0, 0.0, Relation::Above)
        .detail(format!("20 perturbed disks, disk energy {:.6}", disk.energy_q)))
}

fn fixed_perimeter_min(cfg: &VerifyConfig) -> CheckOutput {
    let mut rng = rng(cfg, 23);
    let opts = cfg.survey();
    let mut worst = f64::INFINITY;
    for k in 0..20 {
        let s = random_shape(&mut rng, k)?;
        let s = s.scale(2.0 * PI / s.perimeter()).map_err(err)?;
        let r = riesz_energy(&s, &opts).map_err(err)?;
        worst = worst.min(relative(r.extrapolated, PI / 2.0));
    }
    Ok(Outcome::new(worst, 0.0, SLACK, Relation::AtLeast).detail("20 random sets of perimeter 2 pi"))
}

fn nonexistence(_: &VerifyConfig) -> CheckOutput {
    let w = nonexistence_witness(PI, 8.0, 100, 1e6).map_err(err)?;
    let e = multiball_energy_upper(&w.configuration, 8.0);
    let area_ok = (w.configuration.total_area() - PI).abs() <= 1e-12;
    Ok(Outcome::new(e, ball_energy_q(1.0, 8.0), 0.0, Relation::Below)
        .require(area_ok)
        .detail(format!("theta {:.6}, competitor beats the disk of equal area", w.theta)))
}

fn scaling_law(_: &VerifyConfig) -> CheckOutput {
    let w = nonexistence_witness(PI, 8.0, 100, 1e6).map_err(err)?;
    let e = multiball_energy_upper(&w.configuration, 8.0);
    Ok(Outcome::new(relative(e, charged_infimum(8.0)), 0.0, 0.01, Relation::Within).detail("m = pi, lambda = 8, N = 100"))
}

fn mist(_: &VerifyConfig) -> CheckOutput {
    let cfg = mist_configuration(4.0, 100, 1e6).map_err(err)?;
    let e = multiball_energy_upper(&cfg, 4.0);
    Ok(Outcome::new(relative(e, 4.0 * PI), 0.0, 0.01, Relation::Within).detail("lambda = 4, N = 100"))
}

fn disk_energy_q(cfg: &VerifyConfig) -> CheckOutput {
    let r = energy_report(&unit_disk()?, 4.0, &cfg.accurate()).map_err(err)?;
    Ok(Outcome::new(r.energy_q, 4.0 * PI, 0.01 * 4.0 * PI, Relation::Within))
}

fn disk_energy_u(cfg: &VerifyConfig) -> CheckOutput {
    let riesz = riesz_energy(&unit_disk()?, &cfg.accurate()).map_err(err)?.extrapolated;
    let r = EnergyReport::from_parts(2.0 * PI, PI, riesz, PI * PI);
    Ok(Outcome::new(r.energy_u, 0.0, SLACK * 2.0 * PI, Relation::Within).detail("exact perimeter, lambda = pi^2"))
}

fn eu_trichotomy(_: &VerifyConfig) -> CheckOutput {
    let cases = [
        (PI * PI / 2.0, VoltageBallInfimum::ZeroNotAttained),
        (PI * PI, VoltageBallInfimum::ZeroAttainedEverywhere),
        (2.0 * PI * PI, VoltageBallInfimum::Unbounded),
    ];
    let radii: Vec<f64> = (-6..=6).map(|k| 10f64.powi(k)).collect();
    let mut mismatches = 0;
    for (lambda, expected) in cases {
        if voltage_ball_infimum(lambda) != expected {
            mismatches += 1;
        }
        let values: Vec<f64> = radii.iter().map(|&r| ball_energy_u(r, lambda)).collect();
        let consistent = match expected {
            VoltageBallInfimum::ZeroNotAttained => {
                values.iter().all(|&v| v > 0.0) && values.windows(2).all(|w| w[1] > w[0]) && values[0] < 1e-5
            }
            VoltageBallInfimum::ZeroAttainedEverywhere => values.iter().all(|v| v.abs() < 1e-9 * 1e6),
            VoltageBallInfimum::Unbounded => values.windows(2).all(|w| w[1] < w[0]) && values[12] < -1e6,
        };
        if !consistent {
            mismatches += 1;
        }
    }
    Ok(Outcome::new(mismatches as f64, 0.0, 0.0, Relation::Within).detail("lambda in {pi^2/2, pi^2, 2 pi^2}"))
}

fn eu_fixed_area(_: &VerifyConfig) -> CheckOutput {
    let (m, lambda) = (PI, 2.0 * PI * PI);
    let ns = [1u64, 2, 4, 10, 100, 1_000, 10_000, 1_000_000];
    let mut worst: f64 = 0.0;
    let mut values = Vec::new();
    for &n in &ns {
        let v = eu_divergence_sequence(m, lambda, n).map_err(err)?;
        let c = eu_divergence_closed_form(m, lambda, n);
        worst = worst.max((v - c).abs() / c.abs().max(1.0));
        values.push(v);
    }
    let decreasing = values.windows(2).all(|w| w[1] < w[0]);
    Ok(Outcome::new(worst, 0.0, 1e-12, Relation::AtMost)
        .require(decreasing && *values.last().expect("nonempty") < -1e3)
        .detail(format!("value at n = 1e6: {:.3}", values.last().expect("nonempty"))))
}

fn threshold_ordering(_: &VerifyConfig) -> CheckOutput {
    let t = critical_thresholds(PI).map_err(err)?;
    let expected = [4.0, 4.0 * SQRT_2, 12.0, PI * PI];
    let got = [t.lambda0_q, t.lambda_c1_q, t.lambda_c2_q, t.lambda0_u];
    let worst = got.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let ordered = t.lambda0_q < t.lambda_c1_q && t.lambda_c1_q < t.lambda_c2_q;
    Ok(Outcome::new(worst, 0.0, 1e-12, Relation::Within).require(ordered).detail(format!("{got:?}")))
}

fn split_instability(_: &VerifyConfig) -> CheckOutput {
    let t = critical_thresholds(PI).map_err(err)?;
    let c = split_crossover(PI).map_err(err)?;
    let below = two_ball_split_energy(PI, 0.9 * c) > ball_energy_q(1.0, 0.9 * c);
    let above = two_ball_split_energy(PI, 1.1 * c) < ball_energy_q(1.0, 1.1 * c);
    Ok(Outcome::new(c, t.lambda_c1_q, 1e-9, Relation::Within).require(below && above).detail("bisection"))
}

fn elongation_instability(_: &VerifyConfig) -> CheckOutput {
    let t = critical_thresholds(PI).map_err(err)?;
    let c = elongation_crossover(PI).map_err(err)?;
    let p = 2.0 * PI;
    let below = energy_upper_bound_slope(PI, p, 0.9 * c) > 0.0;
    let above = energy_upper_bound_slope(PI, p, 1.1 * c) < 0.0;
    Ok(Outcome::new(c, t.lambda_c2_q, 1e-9, Relation::Within).require(below && above).detail("bisection"))
}

/// Golden-section minimisation of a unimodal function on `[lo, hi]`.
fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..200 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

fn ball_optimum(_: &VerifyConfig) -> CheckOutput {
    let mut worst: f64 = 0.0;
    let mut argmin_gap: f64 = 0.0;
    for lambda in [1.0, 4.0, 10.0] {
        let (r, e) = golden_min(|r| ball_energy_q(r, lambda), 1e-3, 10.0);
        let exact = charged_infimum(lambda);
        worst = worst.max((e - exact).abs()).max((ball_energy_q(optimal_ball_radius(lambda), lambda) - exact).abs());
        argmin_gap = argmin_gap.max((r - optimal_ball_radius(lambda)).abs());
    }
    Ok(Outcome::new(worst, 0.0, 1e-12, Relation::Within)
        .require(argmin_gap < 1e-6)
        .detail(format!("argmin gap {argmin_gap:.1e}")))
}

fn extrapolation_sanity(_: &VerifyConfig) -> CheckOutput {
    let f = |h: f64| 1.0 + 0.5 * h;
    let x = richardson([0.4, 0.2, 0.1], [f(0.4), f(0.2), f(0.1)]).map_err(err)?;
    Ok(Outcome::new(x.limit, 1.0, 1e-12, Relation::Within).detail("linear model"))
}

fn measure_positivity(cfg: &VerifyConfig) -> CheckOutput {
    let (s, _) = test_ellipse()?;
    let meshes = build_meshes(&s, &cfg.accurate()).map_err(err)?;
    let finest = meshes.last().expect("nonempty").clone();
    let sol = solve_mesh(finest).map_err(err)?;
    let min = sol.measure.weights().iter().copied().fold(f64::INFINITY, f64::min);
    let total: f64 = sol.measure.weights().iter().sum();
    Ok(Outcome::new(min, 0.0, 0.0, Relation::AtLeast)
        .require((total - 1.0).abs() <= 1e-12)
        .detail(format!("active-set steps {}", sol.active_set_steps)))
}

pub(crate) static CATALOGUE: &[CatalogueEntry] = &[
    CatalogueEntry { id: "disk-capacity", run: disk_capacity },
    CatalogueEntry { id: "ellipse-capacity", run: ellipse_capacity },
    CatalogueEntry { id: "ellipse-perimeter", run: ellipse_perimeter },
    CatalogueEntry { id: "capacity-scaling", run: capacity_scaling },
    CatalogueEntry { id: "disk-density", run: disk_density },
    CatalogueEntry { id: "ellipse-density", run: ellipse_density },
    CatalogueEntry { id: "potential-flatness", run: potential_flatness },
    CatalogueEntry { id: "measure-positivity", run: measure_positivity },
    CatalogueEntry { id: "extrapolation", run: extrapolation_sanity },
    CatalogueEntry { id: "dudko-grid", run: dudko_grid },
    CatalogueEntry { id: "dudko-extreme", run: dudko_extreme },
    CatalogueEntry { id: "f-bound", run: f_bound },
    CatalogueEntry { id: "f-limit", run: f_limit },
    CatalogueEntry { id: "g-negative-numeric", run: g_negative },
    CatalogueEntry { id: "g-certificate", run: g_certificate },
    CatalogueEntry { id: "partition-upper", run: partition_upper },
    CatalogueEntry { id: "partition-lower", run: partition_lower },
    CatalogueEntry { id: "ball-merge", run: ball_merge },
    CatalogueEntry { id: "brunn-minkowski", run: brunn_minkowski },
    CatalogueEntry { id: "hadwiger", run: hadwiger },
    CatalogueEntry { id: "hadwiger-capacity", run: hadwiger_capacity },
    CatalogueEntry { id: "global-min", run: global_min },
    CatalogueEntry { id: "fixed-area-min", run: fixed_area_min },
    CatalogueEntry { id: "fixed-perimeter-min", run: fixed_perimeter_min },
    CatalogueEntry { id: "nonexistence", run: nonexistence },
    CatalogueEntry { id: "scaling-law", run: scaling_law },
    CatalogueEntry { id: "mist", run: mist },
    CatalogueEntry { id: "disk-energy-q", run: disk_energy_q },
    CatalogueEntry { id: "disk-energy-u", run: disk_energy_u },
    CatalogueEntry { id: "eu-trichotomy", run: eu_trichotomy },
    CatalogueEntry { id: "eu-fixed-area", run: eu_fixed_area },
    CatalogueEntry { id: "threshold-ordering", run: threshold_ordering },
    CatalogueEntry { id: "split-instability", run: split_instability },
    CatalogueEntry { id: "elongation-instability", run: elongation_instability },
    CatalogueEntry { id: "ball-optimum", run: ball_optimum },
];
